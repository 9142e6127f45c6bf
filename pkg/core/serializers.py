import logging

from rest_framework import serializers

logger = logging.getLogger(__name__)


class CountField(serializers.Field):
    """Non-negative integer rendered as a decimal string.

    Accepts ints or decimal strings on input so documents written by the engine
    can be read back.
    """

    default_error_messages = {
        'invalid': 'A non-negative integer or decimal string is required.',
    }

    def to_representation(self, value):
        return str(int(value))

    def to_internal_value(self, data):
        if isinstance(data, bool):
            self.fail('invalid')
        if isinstance(data, int):
            value = data
        elif isinstance(data, str) and data.strip().isdigit():
            value = int(data.strip())
        else:
            self.fail('invalid')
        if value < 0:
            self.fail('invalid')
        return value


class LettersField(serializers.ListField):
    child = serializers.IntegerField(min_value=1)


class ErrorSerializer(serializers.Serializer):
    error = serializers.CharField()
    message = serializers.CharField()
    details = serializers.DictField()
