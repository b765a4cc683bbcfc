from rest_framework import serializers


class FieldTableSerializer(serializers.Serializer):
    """
    Serializer for exported field tables: {p, n, q, irreducible, add, mul, names, ...}
    """
    p = serializers.IntegerField()
    n = serializers.IntegerField()
    q = serializers.IntegerField()
    irreducible = serializers.ListField(child=serializers.IntegerField())
    add = serializers.ListField(child=serializers.ListField(child=serializers.IntegerField()))
    mul = serializers.ListField(child=serializers.ListField(child=serializers.IntegerField()))
    names = serializers.ListField(child=serializers.CharField())
    generator = serializers.CharField()
    multiplicative_orders = serializers.DictField(child=serializers.IntegerField())
