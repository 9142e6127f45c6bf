import logging

from rest_framework import serializers

from core.exceptions import CondorcetError
from core.serializers import CountField
from perm.serializers import PermutationField
from perm.services import parse_permutation

from .services import VoteTally

logger = logging.getLogger(__name__)


class PrelinearOrderField(serializers.Field):
    def to_representation(self, value):
        return str(value)


class BlocksField(serializers.Field):
    def to_representation(self, value):
        return [sorted(block) for block in value.blocks]


class VoteTallySerializer(serializers.Serializer):
    """Reads a tally document: one-line permutations mapped to counts.

    Counts may be integers or decimal strings; permutations left out count 0.
    """

    counts = serializers.DictField(child=CountField())

    def validate_counts(self, value):
        parsed = {}
        for text, count in value.items():
            try:
                w = parse_permutation(text)
            except CondorcetError as e:
                raise serializers.ValidationError(f"{text!r}: {e.message}")
            if w in parsed:
                raise serializers.ValidationError(f"{text!r} is listed twice")
            parsed[w] = count
        if not parsed:
            raise serializers.ValidationError("the tally is empty")
        ranks = {w.n for w in parsed}
        if len(ranks) != 1:
            raise serializers.ValidationError(f"mixed ranks {sorted(ranks)} in one tally")
        return parsed

    def validate(self, data):
        if not any(data["counts"].values()):
            raise serializers.ValidationError("the tally has no votes")
        return data

    @staticmethod
    def to_tally(validated_data) -> VoteTally:
        counts = validated_data["counts"]
        n = next(iter(counts)).n
        logger.debug(f"Loaded tally over {len(counts)} permutations of [{n}]")
        return VoteTally(counts, n)


class MajorityResultSerializer(serializers.Serializer):
    word = serializers.SerializerMethodField()
    u = PermutationField()
    v = PermutationField()
    relation = PrelinearOrderField(source="order")
    blocks = BlocksField(source="order")
    tally = serializers.SerializerMethodField()
    total = CountField()

    def get_word(self, obj):
        return list(obj.word.letters)

    def get_tally(self, obj):
        return {label: str(value) for label, value in obj.tally.labelled().items()}


class RelationSerializer(serializers.Serializer):
    pairs = serializers.SerializerMethodField()
    prelinear = serializers.SerializerMethodField()
    antisymmetric = serializers.SerializerMethodField()

    def get_pairs(self, obj):
        return [[a, b] for a, b in sorted(obj.pairs)]

    def get_prelinear(self, obj):
        order = obj.to_prelinear()
        return None if order is None else str(order)

    def get_antisymmetric(self, obj):
        return obj.is_antisymmetric()
