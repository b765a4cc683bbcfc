from rest_framework import serializers


class CensusRowSerializer(serializers.Serializer):
    """
    One cycle type of S_{q+1}: its class size there and how many group elements have it
    """
    cycle_type = serializers.CharField()
    class_size = serializers.IntegerField()
    count = serializers.IntegerField()


class ImageSerializer(serializers.Serializer):
    degree = serializers.IntegerField()
    order = serializers.IntegerField()
    even = serializers.IntegerField()
    odd = serializers.IntegerField()
    identification = serializers.CharField()


class ClassSerializer(serializers.Serializer):
    element_order = serializers.IntegerField()
    size = serializers.IntegerField()


class RelabelRowSerializer(serializers.Serializer):
    permutation = serializers.CharField()
    observable = serializers.CharField()
    image = serializers.CharField()


class GroupReportSerializer(serializers.Serializer):
    q = serializers.IntegerField()
    order = serializers.IntegerField()
    expected_order = serializers.IntegerField()
    image = ImageSerializer()
    class_count = serializers.IntegerField()
    classes = ClassSerializer(many=True)
    parity_split = serializers.ListField(child=serializers.IntegerField())
    isomorphic_to = serializers.CharField(required=False)
    fingerprint_match = serializers.BooleanField(required=False)
    even_half_matches_A5 = serializers.BooleanField(required=False)
    relabel_table = RelabelRowSerializer(many=True, required=False)
    rows = CensusRowSerializer(many=True)


class CensusReportSerializer(serializers.Serializer):
    q = serializers.IntegerField()
    total = serializers.IntegerField()
    class_count = serializers.IntegerField()
    rows = CensusRowSerializer(many=True)
