"""
gqm: regenerate the GQM tables, run the searches and checks, persist reports.

    python manage.py gqm prob-table --q 2 --csv
    python manage.py gqm chsh --q 3 --threads 4 --json --output chsh_q3.json
    python manage.py gqm verify-all --q 2
"""
import argparse
import logging
from pathlib import Path

from django.conf import settings
from django.core.management.base import BaseCommand, CommandError, CommandParser

from fields.services import FieldError
from geometry.services import GeometryError, UnknownLabel
from symmetry.services import GroupError
from reports.services import ReportError, ReportService, RunConfig

logger = logging.getLogger('reports')

PROJECT_LOGGERS = (
    'fields', 'geometry', 'spin', 'entanglement', 'correlations',
    'hidden_variables', 'symmetry', 'reports',
)

DOMAIN_ERRORS = (FieldError, GeometryError, UnknownLabel, GroupError, ReportError)

# Science flags echoed into the report config, per subcommand
SCIENCE_FLAGS = {
    'field-table': ('p', 'n', 'irreducible'),
    'states': ('n_levels',),
    'prob-table': ('signed',),
    'chsh': ('include_product', 'prune'),
    'hv-check': ('state', 'observables'),
}


class GqmParser(CommandParser):
    """Sub-command parser whose usage errors exit with status 2."""

    def error(self, message):
        if self.called_from_command_line:
            super().error(message)
        raise CommandError(f"Error: {message}", returncode=2)


def _int_list(text):
    try:
        return [int(c) for c in text.split(',') if c.strip()]
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected comma-separated integers, got '{text}'")


def _name_list(text):
    return [name.strip() for name in text.split(',') if name.strip()]


def _positive(text):
    value = int(text)
    if value < 1:
        raise argparse.ArgumentTypeError(f"expected a positive integer, got {value}")
    return value


def _add_common_arguments(parser, q_default=2):
    parser.add_argument('--q', type=int, default=q_default, help=f'Field order q = p^n (default {q_default})')
    parser.add_argument(
        '--format', choices=['markdown', 'json', 'csv'], default='markdown',
        help='Output format (csv only for tabular reports)',
    )
    parser.add_argument('--json', dest='format', action='store_const', const='json', help='Same as --format json')
    parser.add_argument(
        '--markdown', dest='format', action='store_const', const='markdown', help='Same as --format markdown',
    )
    parser.add_argument('--csv', dest='format', action='store_const', const='csv', help='Same as --format csv')
    parser.add_argument(
        '--output', type=Path, default=None,
        help='Write the report here; relative paths are resolved in GQM_OUTPUT_DIR',
    )
    parser.add_argument('--threads', type=_positive, default=None, help='Worker threads for chsh and hv sweeps')


class Command(BaseCommand):
    help = 'Galois field quantum mechanics: tables, searches, checks and reports'

    def add_arguments(self, parser):
        subparsers = parser.add_subparsers(
            dest='subcommand', required=True, parser_class=GqmParser, title='subcommands',
        )

        def add(name, help_text, q_default=2):
            sub = subparsers.add_parser(
                name, help=help_text, description=help_text,
                called_from_command_line=getattr(parser, 'called_from_command_line', None),
            )
            _add_common_arguments(sub, q_default)
            return sub

        field_table = add('field-table', 'Addition/multiplication tables, generator and element orders of GF(q)')
        field_table.add_argument('--p', type=int, default=None, help='Characteristic (overrides --q)')
        field_table.add_argument('--n', type=int, default=None, help='Extension degree (with --p)')
        field_table.add_argument(
            '--irreducible', type=_int_list, default=None,
            help='Monic irreducible polynomial, high degree first, e.g. 1,1,1',
        )

        states = add('states', 'Inequivalent states of GF(q)^N with duals and the bracket table')
        states.add_argument('--n-levels', dest='n_levels', type=int, default=2, help='Vector space dimension N')

        add('geometry', 'PG(3,2) incidence and the product-state grid')

        prob_table = add('prob-table', 'One-particle outcome probabilities and expectation values')
        prob_table.add_argument('--signed', action='store_true', help='List every ordered observable, not only A_rs')

        add('two-states', 'Two-particle states, entanglement and orbits')
        add('corr-table', 'Joint probabilities and correlations of product observables on entangled states')

        chsh = add('chsh', 'Exhaustive CHSH search')
        chsh.add_argument('--include-product', dest='include_product', action='store_true',
                          help='Search product states as well')
        chsh.add_argument('--no-prune', dest='prune', action='store_false',
                          help='Fill the four slots with signed observables too')

        hv_check = add('hv-check', 'Deterministic hidden-variable assignments against the zero-probability constraints')
        hv_check.add_argument('--state', default='S', help='Two-particle state label (default S)')
        hv_check.add_argument(
            '--observables', type=_name_list, default=None,
            help='Comma-separated observables, e.g. X,Y,Z (default: all canonical)',
        )

        add('group', 'PGL(2,q): order, permutation image, conjugacy classes, cycle census')
        add('s6-census', 'Cycle-type census of PGL(2,5) inside S6', q_default=5)
        add('verify-all', 'Run every acceptance check; exit 1 on the first failure')

    def _configure_logging(self, verbosity):
        level = {2: logging.INFO, 3: logging.DEBUG}.get(verbosity)
        if level is None:
            return
        for name in PROJECT_LOGGERS:
            logging.getLogger(name).setLevel(level)

    def handle(self, *args, **options):
        self._configure_logging(options.get('verbosity', 1))
        subcommand = options['subcommand']
        flags = {
            key: options[key] for key in SCIENCE_FLAGS.get(subcommand, ())
            if options.get(key) is not None
        }

        q = options['q']
        if subcommand == 'field-table' and options.get('p'):
            q = options['p'] ** (options.get('n') or 1)

        service = ReportService()
        try:
            config = RunConfig(
                subcommand=subcommand,
                q=q,
                format=options['format'],
                output_path=options['output'],
                threads=options['threads'] or getattr(settings, 'GQM_DEFAULT_THREADS', 1),
                flags=flags,
            )
            report = service.run(config)
            text = service.emit(report)
        except DOMAIN_ERRORS as e:
            logger.error(f"gqm {subcommand}: {e}")
            raise CommandError(str(e), returncode=2)

        if config.output_path is None:
            self.stdout.write(text, ending='')

        if not report.passed:
            failed = [c['name'] for c in report.raw['checks'] if c['status'] == 'failed']
            raise CommandError(f"Verification failed: {', '.join(failed)}", returncode=1)
