from rest_framework import serializers

from heap.services import OrderIdeal
from perm.serializers import PermutationField

from .services import FoldingSymmetry


class FoldCertificateSerializer(serializers.Serializer):
    """A user-supplied fold; elements are heap positions, ``phi[x - 1]`` is the image of x."""

    phi = serializers.ListField(child=serializers.IntegerField(min_value=1))
    ideal = serializers.ListField(child=serializers.IntegerField(min_value=1))
    antichain = serializers.ListField(child=serializers.IntegerField(min_value=1))

    def validate(self, data):
        size = len(data["phi"])
        for name in ("phi", "ideal", "antichain"):
            if any(x > size for x in data[name]):
                raise serializers.ValidationError({name: f"positions must lie in 1..{size}"})
        return data

    @staticmethod
    def to_fold(validated_data) -> FoldingSymmetry:
        return FoldingSymmetry(
            phi=tuple(validated_data["phi"]),
            ideal=OrderIdeal.of(validated_data["ideal"]),
            antichain=frozenset(validated_data["antichain"]),
        )


class FoldSerializer(serializers.Serializer):
    """A fold described by inversion labels: fixed points, swapped pairs, I and A."""

    fixed = serializers.SerializerMethodField()
    swaps = serializers.SerializerMethodField()
    ideal = serializers.SerializerMethodField()
    antichain = serializers.SerializerMethodField()
    phi = serializers.SerializerMethodField()

    def _label(self, x):
        return self.context["heap"].label(x)

    def get_fixed(self, obj):
        return [self._label(x) for x in obj.fixed_points()]

    def get_swaps(self, obj):
        return [[self._label(x), self._label(y)] for x, y in obj.swaps()]

    def get_ideal(self, obj):
        return [self._label(x) for x in sorted(obj.ideal.members)]

    def get_antichain(self, obj):
        return [self._label(x) for x in sorted(obj.antichain)]

    def get_phi(self, obj):
        return list(obj.phi)


class FoldResultSerializer(serializers.Serializer):
    word = serializers.ListField(child=serializers.IntegerField())
    found = serializers.BooleanField()
    fold = serializers.DictField(allow_null=True)
    u = PermutationField(allow_null=True)
    v = PermutationField(allow_null=True)
    relation = serializers.CharField(allow_null=True)
