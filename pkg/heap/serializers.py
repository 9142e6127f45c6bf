from rest_framework import serializers

from core.serializers import CountField, LettersField
from perm.services import pair_label


class HeapElementSerializer(serializers.Serializer):
    position = serializers.IntegerField()
    letter = serializers.IntegerField()
    inversion = serializers.CharField()


class HeapSerializer(serializers.Serializer):
    """JSON export of a heap: its word, labelled elements and cover pairs."""

    word = serializers.SerializerMethodField()
    n = serializers.IntegerField()
    size = serializers.IntegerField()
    elements = serializers.SerializerMethodField()
    covers = serializers.SerializerMethodField()

    def get_word(self, obj):
        return list(obj.word.letters)

    def get_elements(self, obj):
        elements = [
            {
                "position": x,
                "letter": obj.letter(x),
                "inversion": pair_label(obj.inversion(x), obj.n),
            }
            for x in obj.elements
        ]
        return HeapElementSerializer(elements, many=True).data

    def get_covers(self, obj):
        return [[x, y] for x, y in sorted(obj.covers)]


class CommutationClassSerializer(serializers.Serializer):
    representative = serializers.SerializerMethodField()
    size = CountField(allow_null=True)
    exceeded = serializers.BooleanField()

    def get_representative(self, obj):
        return list(obj.representative.letters)


class DomainSerializer(serializers.Serializer):
    word = LettersField()
    size = CountField()
    permutations = serializers.ListField(child=serializers.CharField())
    is_condorcet = serializers.BooleanField(allow_null=True)
    is_maximal = serializers.BooleanField()
