"""
Serializer fields shared by every app's report serializers
"""
from fractions import Fraction

from rest_framework import serializers


def format_rational(value):
    """Render a rational as "num/den" (never as a decimal)."""
    value = Fraction(value)
    return f"{value.numerator}/{value.denominator}"


class RationalField(serializers.Field):
    """
    Exact rational. JSON bodies get {"num", "den"}; text formats get "num/den".

    The format is picked from the serializer context key ``rational_format``
    ("json" by default, "text" for csv and markdown).
    """

    def to_representation(self, value):
        value = Fraction(value)
        if self.context.get('rational_format') == 'text':
            return format_rational(value)
        return {'num': value.numerator, 'den': value.denominator}

    def to_internal_value(self, data):
        try:
            if isinstance(data, dict):
                return Fraction(int(data['num']), int(data['den']))
            return Fraction(str(data))
        except (KeyError, TypeError, ValueError, ZeroDivisionError):
            raise serializers.ValidationError("Expected a rational as {num, den} or 'num/den'")


class CoordinatesField(serializers.ListField):
    """Vector of field elements rendered with the field's display names."""
    child = serializers.CharField()
