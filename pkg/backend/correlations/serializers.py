from rest_framework import serializers

from galoisqm.serializers import RationalField


class CorrelationRowSerializer(serializers.Serializer):
    """
    Joint outcome probabilities (++, +-, -+, --) and the correlation of one product observable
    """
    observable = serializers.CharField()
    state = serializers.CharField()
    p_pp = RationalField()
    p_pm = RationalField()
    p_mp = RationalField()
    p_mm = RationalField()
    expectation = RationalField()


class CorrTableReportSerializer(serializers.Serializer):
    rows = CorrelationRowSerializer(many=True)


class AchieverSerializer(serializers.Serializer):
    A1 = serializers.CharField()
    A2 = serializers.CharField()
    B1 = serializers.CharField()
    B2 = serializers.CharField()
    state = serializers.CharField()
    value = RationalField()


class HistogramBinSerializer(serializers.Serializer):
    value = RationalField()
    count = serializers.IntegerField()


class ChshReportSerializer(serializers.Serializer):
    q = serializers.IntegerField()
    scope = serializers.CharField()
    pruned = serializers.BooleanField()
    max_abs = RationalField()
    achiever_count = serializers.IntegerField()
    achievers = AchieverSerializer(many=True)
    histogram = HistogramBinSerializer(many=True)
    settings_count = serializers.IntegerField()
    state_count = serializers.IntegerField()
