from rest_framework import serializers

from galoisqm.serializers import RationalField


class ProbabilityRowSerializer(serializers.Serializer):
    """
    One (observable, state) row of the one-particle table
    """
    observable = serializers.CharField()
    state = serializers.CharField()
    p_plus = RationalField()
    p_minus = RationalField()
    expectation = RationalField()


class EigenstateSerializer(serializers.Serializer):
    state = serializers.CharField()
    observables = serializers.ListField(child=serializers.CharField())


class ProbTableReportSerializer(serializers.Serializer):
    rows = ProbabilityRowSerializer(many=True)
    eigenstates = EigenstateSerializer(many=True)
