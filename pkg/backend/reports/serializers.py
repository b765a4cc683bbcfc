from rest_framework import serializers


class ReportMetadataSerializer(serializers.Serializer):
    """
    Provenance stamped on every report; content_hash covers the config echo and the body only
    """
    tool_version = serializers.CharField()
    subcommand = serializers.CharField()
    config = serializers.DictField()
    timestamp = serializers.DateTimeField()
    content_hash = serializers.CharField()


class CheckRowSerializer(serializers.Serializer):
    name = serializers.CharField()
    status = serializers.ChoiceField(choices=['passed', 'failed', 'skipped'])
    detail = serializers.CharField(allow_blank=True)


class VerificationReportSerializer(serializers.Serializer):
    q = serializers.IntegerField()
    passed = serializers.BooleanField()
    checks = CheckRowSerializer(many=True)
