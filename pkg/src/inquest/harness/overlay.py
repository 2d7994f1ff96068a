"""Side-by-side display of simulated results against published ones.

The bundled reference table was measured with an LLM question generator,
so its absolute numbers are not reproducible here; the overlay prints it
next to the simulated aggregates so the qualitative shape can be compared
at a glance.  Values are shown in percent to match the published unit.
"""

from __future__ import annotations

from ..fixtures import load_reference_results

from .experiment import ExperimentReport


def _pct(mean: float | None, std: float | None) -> str:
    if mean is None:
        return "-"
    if std is None:
        return f"{100.0 * mean:.1f}"
    return f"{100.0 * mean:.1f} ± {100.0 * std:.1f}"


def _ref(pair: list | tuple | None) -> str:
    if pair is None:
        return "-"
    mean, std = pair
    return f"{mean:.1f} ± {std:.1f}"


_HEADER = (
    "case",
    "method",
    "completeness (sim)",
    "completeness (ref)",
    "redundancy (sim)",
    "redundancy (ref)",
    "unknown (sim)",
    "unknown (ref)",
)


def reference_overlay(report: ExperimentReport) -> str:
    """Render a markdown table pairing each report row with the published
    row for the same (case, method), where one exists."""
    reference = load_reference_results()
    published = {(row["case"], row["method"]): row for row in reference["rows"]}
    label = reference.get("method_names", {})

    lines = [
        f"Reference: {reference.get('source', 'published results')}",
        "",
        "| " + " | ".join(_HEADER) + " |",
        "|" + "|".join("---" for _ in _HEADER) + "|",
    ]
    for row in report.rows:
        ref_row = published.get((row.case_id, row.method))
        cells = (
            row.case_id,
            label.get(row.method, row.method),
            _pct(row.completeness_mean, row.completeness_std),
            _ref(ref_row["completeness"] if ref_row else None),
            _pct(row.redundancy_mean, row.redundancy_std),
            _ref(ref_row["redundancy"] if ref_row else None),
            _pct(row.unknown_mean, row.unknown_std),
            _ref(ref_row["unknown_rate"] if ref_row else None),
        )
        lines.append("| " + " | ".join(cells) + " |")
    return "\n".join(lines) + "\n"
