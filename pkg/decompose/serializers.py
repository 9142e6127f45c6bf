from rest_framework import serializers

from core.serializers import CountField
from majority.serializers import BlocksField, PrelinearOrderField
from perm.serializers import PermutationField


class BlockSerializer(serializers.Serializer):
    offset = serializers.IntegerField()
    size = serializers.IntegerField()
    word = serializers.SerializerMethodField()

    def get_word(self, obj):
        return list(obj.word.letters)


class BlockMajoritySerializer(serializers.Serializer):
    block = BlockSerializer()
    u = PermutationField()
    v = PermutationField()
    total = CountField()


class FubiniResultSerializer(serializers.Serializer):
    word = serializers.SerializerMethodField()
    parts = BlockMajoritySerializer(many=True)
    u = PermutationField()
    v = PermutationField()
    relation = PrelinearOrderField(source="order")
    blocks = BlocksField(source="order")
    total = CountField()

    def get_word(self, obj):
        return list(obj.decomposition.word.letters)
