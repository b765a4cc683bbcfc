import json
import shutil
import tempfile
from io import StringIO
from pathlib import Path

from django.conf import settings
from django.core.management import call_command
from django.core.management.base import CommandError
from django.test import SimpleTestCase, override_settings

from .services import ReportError, ReportService, RunConfig, markdown_table, table_view
from .verification import VerificationSuite


def gqm(*args):
    out = StringIO()
    call_command('gqm', *args, stdout=out)
    return out.getvalue()


def golden(name):
    return (Path(settings.GQM_GOLDEN_DIR) / name).read_text(encoding='utf-8')


class GoldenTableTests(SimpleTestCase):

    def test_prob_table_csv(self):
        self.assertEqual(gqm('prob-table', '--q', '2', '--csv'), golden('prob_table_q2.csv'))

    def test_prob_table_markdown(self):
        report = ReportService().run(RunConfig(subcommand='prob-table', q=2))
        headers, rows = table_view(report)
        self.assertEqual(markdown_table(headers, rows), golden('prob_table_q2.md'))

    def test_corr_table_csv(self):
        text = gqm('corr-table', '--q', '2', '--format', 'csv')
        self.assertEqual(text, golden('corr_table_q2.csv'))
        self.assertEqual(len(text.splitlines()), 55)

    def test_s6_census_defaults_to_q5(self):
        self.assertEqual(gqm('s6-census', '--csv'), golden('s6_census_q5.csv'))


class RenderingTests(SimpleTestCase):

    def test_markdown_document(self):
        text = gqm('prob-table', '--q', '2')
        self.assertIn("| Z | a | 0/1 | 1/1 | -1/1 |", text)
        self.assertIn("## rows", text)
        self.assertIn("## eigenstates", text)
        self.assertIn("- content_hash: ", text)

    def test_field_table_markdown(self):
        text = gqm('field-table', '--q', '4', '--markdown')
        self.assertIn("| add | 0 | 1 | ω | ω² |", text)
        self.assertIn("| mul | 0 | 1 | ω | ω² |", text)
        self.assertIn("- generator: ω", text)

    def test_json_layout(self):
        payload = json.loads(gqm('chsh', '--q', '2', '--json'))
        self.assertEqual(list(payload), ['metadata', 'body'])
        self.assertEqual(
            list(payload['metadata']),
            ['tool_version', 'subcommand', 'config', 'timestamp', 'content_hash'],
        )
        self.assertEqual(payload['body']['max_abs'], {'num': 2, 'den': 1})
        self.assertEqual(payload['metadata']['config'], {'q': 2, 'include_product': False, 'prune': True})

    def test_explicit_field_flags(self):
        payload = json.loads(gqm('field-table', '--p', '2', '--n', '2', '--irreducible', '1,1,1', '--json'))
        self.assertEqual(payload['metadata']['config']['q'], 4)
        self.assertEqual(payload['body']['irreducible'], [1, 1, 1])
        self.assertEqual(payload['body']['multiplicative_orders'], {"1": 1, "ω": 3, "ω²": 3})

    def test_rationals_are_never_decimals(self):
        text = gqm('corr-table', '--q', '2', '--csv')
        self.assertNotIn("0.", text)

    def test_output_file(self):
        with tempfile.TemporaryDirectory() as tmp, override_settings(GQM_OUTPUT_DIR=Path(tmp)):
            stdout = gqm('corr-table', '--csv', '--output', 'correlations.csv')
            self.assertEqual(stdout, "")
            written = (Path(tmp) / 'correlations.csv').read_text(encoding='utf-8')
        self.assertEqual(written, golden('corr_table_q2.csv'))


class ContentHashTests(SimpleTestCase):

    def setUp(self):
        self.service = ReportService()

    def test_hash_ignores_format_and_threads(self):
        a = self.service.run(RunConfig(subcommand='chsh', q=2, format='json', threads=1))
        b = self.service.run(RunConfig(subcommand='chsh', q=2, format='markdown', threads=3))
        self.assertEqual(a.metadata['content_hash'], b.metadata['content_hash'])

    def test_hash_follows_science_flags(self):
        plain = self.service.run(RunConfig(subcommand='prob-table', q=2))
        signed = self.service.run(RunConfig(subcommand='prob-table', q=2, flags={'signed': True}))
        self.assertNotEqual(plain.metadata['content_hash'], signed.metadata['content_hash'])

    def test_verify_all_hash_is_thread_independent(self):
        one = json.loads(gqm('verify-all', '--q', '2', '--json', '--threads', '1'))
        four = json.loads(gqm('verify-all', '--q', '2', '--json', '--threads', '4'))
        self.assertTrue(one['body']['passed'])
        self.assertEqual(one['metadata']['content_hash'], four['metadata']['content_hash'])


class ExitCodeTests(SimpleTestCase):

    def assertExitCode(self, code, *args):
        with self.assertRaises(CommandError) as ctx:
            gqm(*args)
        self.assertEqual(ctx.exception.returncode, code)

    def test_csv_for_non_tabular_body(self):
        self.assertExitCode(2, 'hv-check', '--q', '2', '--csv')

    def test_unsupported_q(self):
        self.assertExitCode(2, 'prob-table', '--q', '6')
        self.assertExitCode(2, 'group', '--q', '32')

    def test_unknown_state(self):
        self.assertExitCode(2, 'hv-check', '--state', 'T')

    def test_bad_threads(self):
        self.assertExitCode(2, 'chsh', '--threads', '0')

    def test_unwritable_output(self):
        with tempfile.TemporaryDirectory() as tmp:
            self.assertExitCode(2, 'prob-table', '--output', str(Path(tmp) / 'missing' / 'out.md'))

    def test_geometry_needs_gf2(self):
        self.assertExitCode(2, 'geometry', '--q', '3')

    def test_run_config_validation(self):
        with self.assertRaises(ReportError):
            RunConfig(subcommand='plot')
        with self.assertRaises(ReportError):
            RunConfig(subcommand='chsh', threads=0)


class VerificationTests(SimpleTestCase):

    def setUp(self):
        self.tmp = tempfile.TemporaryDirectory()
        self.addCleanup(self.tmp.cleanup)
        self.golden_dir = Path(self.tmp.name) / 'golden'
        shutil.copytree(settings.GQM_GOLDEN_DIR, self.golden_dir)
        path = self.golden_dir / 'prob_table_q2.csv'
        path.write_text(
            path.read_text(encoding='utf-8').replace("Z,a,0/1,1/1,-1/1", "Z,a,1/1,0/1,1/1"),
            encoding='utf-8',
        )

    def test_all_checks_pass(self):
        body = VerificationSuite(2).run()
        self.assertTrue(body['passed'])
        self.assertTrue(all(c['status'] == 'passed' for c in body['checks']))

    def test_stops_at_first_failure_with_diff(self):
        body = VerificationSuite(2, golden_dir=self.golden_dir).run()
        self.assertFalse(body['passed'])
        statuses = {c['name']: c['status'] for c in body['checks']}
        self.assertEqual(statuses['field-axioms'], 'passed')
        self.assertEqual(statuses['one-particle-csv'], 'failed')
        failed = next(c for c in body['checks'] if c['status'] == 'failed')
        self.assertIn("-Z,a,1/1,0/1,1/1", failed['detail'])
        self.assertIn("+Z,a,0/1,1/1,-1/1", failed['detail'])
        names = [c['name'] for c in body['checks']]
        after = body['checks'][names.index('one-particle-csv') + 1:]
        self.assertTrue(after)
        self.assertTrue(all(c['status'] == 'skipped' for c in after))

    def test_failure_exits_with_one(self):
        with override_settings(GQM_GOLDEN_DIR=self.golden_dir):
            with self.assertRaises(CommandError) as ctx:
                gqm('verify-all', '--q', '2')
        self.assertEqual(ctx.exception.returncode, 1)

    def test_other_fields(self):
        body = VerificationSuite(3).run()
        self.assertTrue(body['passed'])
        self.assertEqual(
            [c['name'] for c in body['checks']],
            ['field-axioms', 'pairing', 'state-counts', 'hidden-variables', 'group-structure', 'factorization'],
        )
