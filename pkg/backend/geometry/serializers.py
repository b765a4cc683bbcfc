from rest_framework import serializers

from galoisqm.serializers import CoordinatesField


class StateRowSerializer(serializers.Serializer):
    label = serializers.CharField()
    coords = CoordinatesField()
    orbit_size = serializers.IntegerField()


class DualRowSerializer(serializers.Serializer):
    label = serializers.CharField()
    coords = CoordinatesField()


class ActionRowSerializer(serializers.Serializer):
    """
    One row of the bracket table: ⟨dual|s⟩ for every state s, as display names
    """
    dual = serializers.CharField()
    values = CoordinatesField()


class StatesReportSerializer(serializers.Serializer):
    q = serializers.IntegerField()
    n_levels = serializers.IntegerField()
    state_count = serializers.IntegerField()
    rows = StateRowSerializer(many=True)
    duals = DualRowSerializer(many=True, required=False)
    action = ActionRowSerializer(many=True, required=False)


class GridSerializer(serializers.Serializer):
    grid_lines = serializers.ListField(child=serializers.ListField(child=serializers.CharField()))
    is_grid = serializers.BooleanField()
    all_transversal = serializers.BooleanField()
    non_planar = serializers.BooleanField()
    max_grid_lines_per_plane = serializers.IntegerField()


class DecompositionRowSerializer(serializers.Serializer):
    state = serializers.CharField()
    decompositions = serializers.ListField(child=serializers.CharField())


class GeometryReportSerializer(serializers.Serializer):
    """
    PG(3,2) incidence counts, the product-state grid and entangled-state decompositions
    """
    q = serializers.IntegerField()
    point_count = serializers.IntegerField()
    line_count = serializers.IntegerField()
    lines_per_point = serializers.ListField(child=serializers.IntegerField())
    plane_count = serializers.IntegerField()
    points_per_plane = serializers.ListField(child=serializers.IntegerField())
    planes_per_line = serializers.ListField(child=serializers.IntegerField())
    grid = GridSerializer()
    rows = DecompositionRowSerializer(many=True)
