"""
Report assembly for the ``gqm`` command.

A RunConfig names a subcommand and its science flags; ReportService dispatches
it to the owning app, serializes the body, stamps the metadata and renders it
as json, csv or markdown.
"""
import hashlib
import json
import logging
import re
from dataclasses import dataclass, field as dc_field
from pathlib import Path
from typing import Any, Callable, Dict, List, Optional, Sequence, Tuple, Type

import pandas as pd
from django.conf import settings
from django.template.loader import render_to_string
from django.utils import timezone
from rest_framework import serializers
from rest_framework.renderers import JSONRenderer

from correlations.serializers import ChshReportSerializer, CorrTableReportSerializer
from correlations.services import chsh_report, corr_table_report
from entanglement.serializers import TwoStatesReportSerializer
from entanglement.services import two_states_report
from fields.serializers import FieldTableSerializer
from fields.services import build_field, field_for_order, field_table_report
from geometry.serializers import GeometryReportSerializer, StatesReportSerializer
from geometry.services import geometry_report, states_report
from hidden_variables.serializers import HvReportSerializer
from hidden_variables.services import hv_report
from spin.serializers import ProbTableReportSerializer
from spin.services import prob_table_report, relabel_table
from symmetry.serializers import CensusReportSerializer, GroupReportSerializer
from symmetry.services import group_report, s6_census_report

from .serializers import ReportMetadataSerializer, VerificationReportSerializer

logger = logging.getLogger(__name__)

FORMATS = ('markdown', 'json', 'csv')


class ReportError(ValueError):
    """Raised for report requests that cannot be honoured."""


@dataclass(frozen=True)
class RunConfig:
    """
    One fully specified run. ``flags`` holds the science flags of the
    subcommand; threads, format and output path never change the body.
    """
    subcommand: str
    q: int = 2
    format: str = 'markdown'
    output_path: Optional[Path] = None
    threads: int = 1
    flags: Dict[str, Any] = dc_field(default_factory=dict)

    def __post_init__(self):
        if self.subcommand not in REPORTS:
            raise ReportError(f"Unknown subcommand '{self.subcommand}'")
        if self.format not in FORMATS:
            raise ReportError(f"Unknown format '{self.format}'; expected one of {', '.join(FORMATS)}")
        if self.q < 2:
            raise ReportError(f"q = {self.q} is not a field order")
        if self.threads < 1:
            raise ReportError(f"threads must be at least 1, got {self.threads}")

    def echo(self) -> dict:
        return {'q': self.q, **dict(sorted(self.flags.items()))}


@dataclass(frozen=True)
class ReportSpec:
    builder: Callable[[RunConfig], dict]
    serializer_class: Type[serializers.Serializer]
    table_key: Optional[str] = None
    title: str = ''


@dataclass
class Report:
    config: RunConfig
    raw: dict
    body: dict
    metadata: dict

    @property
    def spec(self) -> ReportSpec:
        return REPORTS[self.config.subcommand]

    @property
    def passed(self) -> bool:
        return bool(self.raw.get('passed', True))

    def text_body(self) -> dict:
        """The body with rationals as "num/den" strings."""
        return self.spec.serializer_class(self.raw, context={'rational_format': 'text'}).data


def _field_table(config: RunConfig) -> dict:
    p = config.flags.get('p')
    if p:
        field = build_field(p, config.flags.get('n') or 1, config.flags.get('irreducible'))
    else:
        field = field_for_order(config.q)
    return field_table_report(field)


def _group(config: RunConfig) -> dict:
    body = group_report(config.q)
    if config.q == 2:
        body['relabel_table'] = relabel_table(config.q)
    return body


def _verify_all(config: RunConfig) -> dict:
    from .verification import VerificationSuite
    return VerificationSuite(config.q, threads=config.threads).run()


REPORTS: Dict[str, ReportSpec] = {
    'field-table': ReportSpec(_field_table, FieldTableSerializer, title="Field tables"),
    'states': ReportSpec(
        lambda c: states_report(c.q, c.flags.get('n_levels') or 2), StatesReportSerializer, 'rows',
        "Projective states",
    ),
    'geometry': ReportSpec(lambda c: geometry_report(c.q), GeometryReportSerializer, 'rows', "PG(3,2) incidence"),
    'prob-table': ReportSpec(
        lambda c: prob_table_report(c.q, signed=bool(c.flags.get('signed'))), ProbTableReportSerializer, 'rows',
        "One-particle probabilities",
    ),
    'two-states': ReportSpec(lambda c: two_states_report(c.q), TwoStatesReportSerializer, 'states', "Two-particle states"),
    'corr-table': ReportSpec(lambda c: corr_table_report(c.q), CorrTableReportSerializer, 'rows', "Two-particle correlations"),
    'chsh': ReportSpec(
        lambda c: chsh_report(
            c.q, include_product=bool(c.flags.get('include_product')),
            prune=c.flags.get('prune', True), threads=c.threads,
        ),
        ChshReportSerializer, 'achievers', "CHSH search",
    ),
    'hv-check': ReportSpec(
        lambda c: hv_report(c.q, c.flags.get('state') or "S", c.flags.get('observables'), threads=c.threads),
        HvReportSerializer, title="Hidden-variable check",
    ),
    'group': ReportSpec(_group, GroupReportSerializer, 'rows', "PGL(2,q) structure"),
    's6-census': ReportSpec(lambda c: s6_census_report(c.q), CensusReportSerializer, 'rows', "S6 cycle-type census"),
    'verify-all': ReportSpec(_verify_all, VerificationReportSerializer, 'checks', "Verification"),
}


def content_hash(config: RunConfig, body: dict) -> str:
    """SHA-256 of the key-sorted JSON of subcommand, q, science flags and body."""
    payload = {'subcommand': config.subcommand, 'config': config.echo(), 'body': body}
    content = json.dumps(payload, sort_keys=True, ensure_ascii=False, separators=(',', ':'))
    return hashlib.sha256(content.encode('utf-8')).hexdigest()


def _cell(value):
    if isinstance(value, bool):
        return "true" if value else "false"
    if value is None:
        return ""
    if isinstance(value, (list, tuple)):
        return "[" + ", ".join(str(_cell(v)) for v in value) + "]"
    if isinstance(value, dict):
        return "{" + ", ".join(f"{k}: {_cell(v)}" for k, v in value.items()) + "}"
    return value


def _markdown_cell(value) -> str:
    return str(_cell(value)).replace("|", "\\|").replace("\n", "<br>")


def table_view(report: Report, body: Optional[dict] = None) -> Tuple[List[str], List[List[Any]]]:
    """Headers and rows of the tabular part of a report (text rationals)."""
    key = report.spec.table_key
    if key is None:
        raise ReportError(
            f"'{report.config.subcommand}' has no tabular body; use --format json or markdown"
        )
    serializer = report.spec.serializer_class(context={'rational_format': 'text'})
    headers = list(serializer.fields[key].child.fields.keys())
    body = body if body is not None else report.text_body()
    rows = [[_cell(row.get(h)) for h in headers] for row in body.get(key, [])]
    return headers, rows


def markdown_table(headers: Sequence[str], rows: Sequence[Sequence[Any]]) -> str:
    text = render_to_string('reports/table.md', {
        'headers': list(headers),
        'rows': [[_markdown_cell(v) for v in row] for row in rows],
    })
    return text.rstrip() + "\n"


def _matrix_section(title: str, matrix: list, names: Optional[list]) -> dict:
    # entries are element indices; show them by display name when the body has them
    if not names or len(names) != len(matrix):
        names = [str(i) for i in range(len(matrix))]
    return {
        'title': title,
        'headers': [title, *names],
        'rows': [[names[i], *(names[v] for v in row)] for i, row in enumerate(matrix)],
    }


def markdown_sections(body: dict) -> Tuple[List[Tuple[str, str]], List[dict]]:
    """Split a text body into summary lines and titled sections."""
    summary, sections = [], []
    for key, value in body.items():
        if isinstance(value, list) and value and all(isinstance(v, dict) for v in value):
            headers = list(value[0].keys())
            sections.append({
                'title': key,
                'headers': headers,
                'rows': [[_markdown_cell(row.get(h)) for h in headers] for row in value],
            })
        elif isinstance(value, list) and value and all(isinstance(v, list) for v in value):
            sections.append(_matrix_section(key, value, body.get('names')))
        elif isinstance(value, dict):
            sections.append({'title': key, 'pairs': [(k, _markdown_cell(v)) for k, v in value.items()]})
        elif isinstance(value, list) and not value:
            summary.append((key, "none"))
        else:
            summary.append((key, _markdown_cell(value)))
    return summary, sections


class ReportService:
    """
    Runs a RunConfig end to end: dispatch, serialization, metadata, rendering
    and (optionally) persisting the artifact.
    """

    def __init__(self):
        self.tool_version = getattr(settings, 'GQM_TOOL_VERSION', '0')
        self.output_dir = Path(getattr(settings, 'GQM_OUTPUT_DIR', '.'))

    def run(self, config: RunConfig) -> Report:
        spec = REPORTS[config.subcommand]
        if not config.flags.get('p'):
            field_for_order(config.q)

        logger.info(f"Running {config.subcommand} for q={config.q} with flags {config.echo()}")
        raw = spec.builder(config)
        body = spec.serializer_class(raw, context={'rational_format': 'json'}).data
        metadata = ReportMetadataSerializer({
            'tool_version': self.tool_version,
            'subcommand': config.subcommand,
            'config': config.echo(),
            'timestamp': timezone.now(),
            'content_hash': content_hash(config, body),
        }).data
        return Report(config=config, raw=raw, body=body, metadata=metadata)

    def render(self, report: Report, fmt: Optional[str] = None) -> str:
        fmt = fmt or report.config.format
        if fmt == 'json':
            return self.render_json(report)
        if fmt == 'csv':
            return self.render_csv(report)
        if fmt == 'markdown':
            return self.render_markdown(report)
        raise ReportError(f"Unknown format '{fmt}'")

    def render_json(self, report: Report) -> str:
        data = JSONRenderer().render(
            {'metadata': report.metadata, 'body': report.body},
            renderer_context={'indent': 2},
        )
        return data.decode('utf-8') + "\n"

    def render_csv(self, report: Report) -> str:
        headers, rows = table_view(report)
        return pd.DataFrame(rows, columns=headers).to_csv(index=False, lineterminator="\n")

    def render_markdown(self, report: Report) -> str:
        summary, sections = markdown_sections(report.text_body())
        text = render_to_string('reports/report.md', {
            'title': report.spec.title or report.config.subcommand,
            'subcommand': report.config.subcommand,
            'summary': summary,
            'sections': sections,
            'metadata': report.metadata,
            'config': _cell(dict(report.metadata['config'])),
        })
        return re.sub(r"\n{3,}", "\n\n", text).strip() + "\n"

    def resolve_output(self, path) -> Path:
        path = Path(path)
        return path if path.is_absolute() else self.output_dir / path

    def emit(self, report: Report, fmt: Optional[str] = None, path=None) -> str:
        """
        Render the report; write it to ``path`` (relative paths land in
        GQM_OUTPUT_DIR) when given. Returns the rendered text.
        """
        text = self.render(report, fmt)
        path = path if path is not None else report.config.output_path
        if path is not None:
            target = self.resolve_output(path)
            try:
                target.write_text(text, encoding='utf-8')
            except OSError as e:
                logger.error(f"Cannot write report to {target}: {e}")
                raise ReportError(f"Cannot write report to {target}: {e}")
            logger.info(f"Wrote {report.config.subcommand} report to {target}")
        return text
