from rest_framework import serializers

from galoisqm.serializers import RationalField


class OutcomeSerializer(serializers.Serializer):
    observable = serializers.CharField()
    outcome = serializers.CharField(help_text="Outcome pair such as '+-'")


class UnreachableOutcomeSerializer(OutcomeSerializer):
    probability = RationalField()


class HvReportSerializer(serializers.Serializer):
    """
    Zero-probability constraints of a state, the assignments that survive them and the implication chart
    """
    q = serializers.IntegerField()
    state = serializers.CharField()
    observables = serializers.ListField(child=serializers.CharField())
    assignment_count = serializers.IntegerField()
    forbidden = OutcomeSerializer(many=True)
    survivors = serializers.ListField(child=serializers.DictField(child=serializers.IntegerField()))
    survivor_count = serializers.IntegerField()
    truncated = serializers.BooleanField()
    implications = serializers.ListField(child=serializers.CharField())
    contradiction = serializers.ListField(child=serializers.CharField())
    unreachable = UnreachableOutcomeSerializer(many=True)
    verdict = serializers.ChoiceField(choices=['no-hidden-variables', 'survivors-exist'])
