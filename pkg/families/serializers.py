from rest_framework import serializers

from core.serializers import CountField
from folding.serializers import FoldSerializer
from majority.serializers import PrelinearOrderField

from .constants import FamilyConstants


class FamilySpecSerializer(serializers.Serializer):
    kind = serializers.ChoiceField(choices=FamilyConstants.Kind.choices)
    n = serializers.IntegerField(allow_null=True)
    p = serializers.IntegerField()
    k = serializers.IntegerField(allow_null=True)
    trailing_odd = serializers.BooleanField()
    variant = serializers.ChoiceField(choices=FamilyConstants.Variant.choices)
    label = serializers.SerializerMethodField()

    def get_label(self, obj):
        return str(obj)


class FamilyReportSerializer(serializers.Serializer):
    spec = FamilySpecSerializer()
    word = serializers.SerializerMethodField()
    heap_size = serializers.IntegerField()
    ideal_count = CountField()
    predicted = PrelinearOrderField()
    computed = PrelinearOrderField()
    match = serializers.BooleanField()
    fold = serializers.SerializerMethodField()
    fold_valid = serializers.BooleanField()
    fold_majority = PrelinearOrderField(allow_null=True)
    fold_match = serializers.BooleanField()
    balanced = serializers.BooleanField()

    def get_word(self, obj):
        return list(obj.word.letters)

    def get_fold(self, obj):
        return FoldSerializer(obj.fold, context={"heap": obj.heap}).data


class ConjectureReportSerializer(serializers.Serializer):
    n = serializers.IntegerField()
    p = serializers.IntegerField()
    word = serializers.SerializerMethodField()
    conjectured = PrelinearOrderField()
    computed = PrelinearOrderField()
    holds = serializers.BooleanField()
    ideal_count = CountField()
    oracle_match = serializers.BooleanField(allow_null=True)
    fold_found = serializers.BooleanField(allow_null=True)

    def get_word(self, obj):
        return list(obj.word.letters)
