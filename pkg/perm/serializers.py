from rest_framework import serializers

from core.exceptions import CondorcetError
from core.serializers import CountField, LettersField

from .services import decompose, parse_permutation


class PermutationField(serializers.Field):
    """A permutation in one-line text form."""

    def to_representation(self, value):
        return str(value)

    def to_internal_value(self, data):
        try:
            return parse_permutation(str(data))
        except CondorcetError as e:
            raise serializers.ValidationError(e.message)


class PermutationSerializer(serializers.Serializer):
    one_line = serializers.SerializerMethodField()
    n = serializers.IntegerField()
    length = CountField()
    inversions = serializers.SerializerMethodField()
    blocks = serializers.SerializerMethodField()

    def get_one_line(self, obj):
        return str(obj)

    def get_inversions(self, obj):
        return obj.inversions.labels()

    def get_blocks(self, obj):
        return [str(block) for block in decompose(obj)]


class ReducedWordSerializer(serializers.Serializer):
    letters = LettersField()
    n = serializers.IntegerField()
    permutation = PermutationField()
    s_support = serializers.SerializerMethodField()

    def get_s_support(self, obj):
        return sorted(set(obj.letters))
