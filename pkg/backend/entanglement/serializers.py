from rest_framework import serializers

from galoisqm.serializers import CoordinatesField


class TwoStateSerializer(serializers.Serializer):
    label = serializers.CharField()
    coords = CoordinatesField()
    entangled = serializers.BooleanField()


class MultipletSerializer(serializers.Serializer):
    singlet = serializers.ListField(child=serializers.CharField())
    triplet = serializers.ListField(child=serializers.CharField())
    doublet = serializers.ListField(child=serializers.CharField())


class SingletFormSerializer(serializers.Serializer):
    terms = serializers.CharField()
    equals_singlet = serializers.BooleanField()


class TwoStatesReportSerializer(serializers.Serializer):
    """
    Product and entangled two-particle states, with orbit data under basis transformations
    """
    q = serializers.IntegerField()
    state_count = serializers.IntegerField()
    product_count = serializers.IntegerField()
    entangled_count = serializers.IntegerField()
    diagonal_orbit_sizes = serializers.ListField(child=serializers.IntegerField())
    local_orbit_sizes = serializers.ListField(child=serializers.IntegerField())
    states = TwoStateSerializer(many=True)
    multiplets = MultipletSerializer(required=False)
    singlet_forms = SingletFormSerializer(many=True, required=False)
    singlet_swap_symmetric = serializers.BooleanField(required=False)
