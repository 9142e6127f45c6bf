import json
from io import StringIO

from django.conf import settings as django_settings
from django.core.exceptions import ImproperlyConfigured
from django.test import SimpleTestCase, override_settings
from rest_framework import serializers

from core.cli import EXIT_DOMAIN_ERROR, EXIT_OK, EXIT_USAGE, run
from core.conf import get_engine_config
from core.constants import EngineConstants
from core.exceptions import BudgetExceeded, UsageError
from core.parallel import ordered_map
from core.renderers import canonical_json, render_dot
from core.serializers import CountField, ErrorSerializer


class EngineConfigTests(SimpleTestCase):
    @override_settings(CONDORCET={"MAX_N": 9, "OUTPUT_FORMAT": "json"})
    def test_reads_settings(self):
        config = get_engine_config()
        self.assertEqual(config.MAX_N, 9)
        self.assertEqual(config.OUTPUT_FORMAT, EngineConstants.OutputFormat.JSON)
        self.assertEqual(config.BRUHAT_MAX_N, 6)

    def test_overrides_win(self):
        self.assertEqual(get_engine_config(MAX_N=5).MAX_N, 5)

    @override_settings(CONDORCET={"CLASS_BFS_LIMIT": 0})
    def test_rejects_non_positive(self):
        with self.assertRaises(ImproperlyConfigured):
            get_engine_config()

    @override_settings(CONDORCET={"OUTPUT_FORMAT": "yaml"})
    def test_rejects_unknown_format(self):
        with self.assertRaises(ImproperlyConfigured):
            get_engine_config()

    @override_settings(CONDORCET={"NOT_A_SETTING": 1})
    def test_ignores_unknown_keys(self):
        with self.assertLogs("core.conf", level="WARNING"):
            self.assertEqual(get_engine_config().MAX_N, 16)


class RendererTests(SimpleTestCase):
    def test_canonical_json_is_stable(self):
        text = canonical_json({"b": [2, 1], "a": "x"})
        self.assertTrue(text.index('"a"') < text.index('"b"'))
        self.assertEqual(canonical_json(json.loads(text)), text)

    def test_render_dot(self):
        dot = render_dot("g", [("x", "first\nsecond"), ("y", "{1 2}")], [("x", "y")])
        self.assertTrue(dot.startswith("digraph g {"))
        self.assertIn("rankdir=BT", dot)
        self.assertIn('label="first\\nsecond"', dot)
        self.assertIn('label="{1 2}"', dot)
        self.assertIn("x -> y", dot)
        self.assertTrue(dot.endswith("}\n"))


class CountFieldTests(SimpleTestCase):
    def test_accepts_int_and_string(self):
        field = CountField()
        self.assertEqual(field.to_internal_value(7), 7)
        self.assertEqual(field.to_internal_value(" 12 "), 12)
        self.assertEqual(field.to_representation(12), "12")

    def test_rejects_bad_values(self):
        field = CountField()
        for value in (True, -1, "1.5", None):
            with self.assertRaises(serializers.ValidationError):
                field.run_validation(value)


class ErrorPayloadTests(SimpleTestCase):
    def test_error_serializer_shape(self):
        error = BudgetExceeded("stopped", {"n": 5}, state=object())
        serializer = ErrorSerializer(data=error.to_dict())
        self.assertTrue(serializer.is_valid(), serializer.errors)
        self.assertEqual(serializer.validated_data["error"], "BudgetExceeded")

    def test_default_message(self):
        self.assertEqual(UsageError().message, "UsageError")


class OrderedMapTests(SimpleTestCase):
    def test_serial_and_pooled_agree(self):
        items = [-3, 1, -4, 1, -5, 9, -2, 6]
        self.assertEqual(ordered_map(abs, items), [3, 1, 4, 1, 5, 9, 2, 6])
        self.assertEqual(ordered_map(abs, items, workers=3), ordered_map(abs, items))

    def test_empty(self):
        self.assertEqual(ordered_map(abs, [], workers=4), [])


class CliTests(SimpleTestCase):
    def run_cli(self, *argv):
        stdout, stderr = StringIO(), StringIO()
        return run(list(argv), stdout=stdout, stderr=stderr), stdout.getvalue(), stderr.getvalue()

    def test_unknown_subcommand(self):
        code, _, err = self.run_cli("migrate")
        self.assertEqual(code, EXIT_USAGE)
        self.assertEqual(json.loads(err)["error"], "UsageError")

    def test_missing_argument(self):
        code, _, err = self.run_cli("perm")
        self.assertEqual(code, EXIT_USAGE)
        self.assertEqual(json.loads(err)["error"], "UsageError")

    def test_success(self):
        code, out, _ = self.run_cli("perm", "--word", "2,1,3,2,6,5")
        self.assertEqual(code, EXIT_OK)
        self.assertIn("3412756", out)

    def test_help_goes_to_given_stream(self):
        code, out, _ = self.run_cli("perm", "--help")
        self.assertEqual(code, EXIT_OK)
        self.assertIn("--one-line", out)

    def test_error_document_fields(self):
        code, _, err = self.run_cli("perm", "--word", "1,1")
        self.assertEqual(code, EXIT_USAGE)
        self.assertEqual(set(json.loads(err)), {"error", "message", "details"})

    def test_domain_error_document(self):
        code, _, err = self.run_cli("family", "--kind", "diamond", "--k", "0")
        self.assertEqual(code, EXIT_DOMAIN_ERROR)
        document = json.loads(err)
        self.assertEqual(set(document), {"error", "message", "details"})
        self.assertEqual(document["error"], "ParamOutOfRange")


class SettingsTests(SimpleTestCase):
    def test_only_needed_apps_and_formatters(self):
        self.assertNotIn("django.contrib.auth", django_settings.INSTALLED_APPS)
        self.assertEqual(set(django_settings.LOGGING["formatters"]), {"verbose"})
        self.assertNotIn("COERCE_DECIMAL_TO_STRING", django_settings.REST_FRAMEWORK)
