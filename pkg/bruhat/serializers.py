from rest_framework import serializers

from majority.serializers import PrelinearOrderField

from .models import BruhatRun


class BruhatNodeSerializer(serializers.Serializer):
    class_id = serializers.CharField()
    triples = serializers.SerializerMethodField()
    representative = serializers.SerializerMethodField()
    majority = PrelinearOrderField()
    compact = serializers.SerializerMethodField()
    class_size = serializers.IntegerField()

    def get_triples(self, obj):
        return obj.inversion_triples.labels()

    def get_representative(self, obj):
        return list(obj.representative.letters)

    def get_compact(self, obj):
        return obj.majority.compact()


class BruhatPosetSerializer(serializers.Serializer):
    n = serializers.IntegerField()
    node_count = serializers.SerializerMethodField()
    cover_count = serializers.SerializerMethodField()
    nodes = serializers.SerializerMethodField()
    covers = serializers.SerializerMethodField()

    def get_node_count(self, obj):
        return len(obj.nodes)

    def get_cover_count(self, obj):
        return len(obj.covers)

    def get_nodes(self, obj):
        return BruhatNodeSerializer(obj.sorted_nodes(), many=True).data

    def get_covers(self, obj):
        labels = {node.key: node.class_id for node in obj.nodes.values()}
        return [
            {
                "lower": labels[lower],
                "upper": labels[upper],
                "added_triple": "".join(str(v) for v in obj.covers[(lower, upper)]),
            }
            for lower, upper in obj.sorted_covers()
        ]


class BruhatRunSerializer(serializers.ModelSerializer):
    class Meta:
        model = BruhatRun
        fields = ['id', 'n', 'status', 'node_count', 'cover_count', 'created_at', 'updated_at']
        read_only_fields = fields
