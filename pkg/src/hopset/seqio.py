"""File formats: sequence sets, ledgers, fairness curves, reports, scenarios.

Sequence sets travel as plain text, one sequence per line of comma-separated
decimal spot indices, preceded by a single header line:

    # M=<spots> n=<length> q=<members> kind=<base|balanced>

All writes go through a temp file and rename, so partially written outputs
never appear under the target name. CSV output uses '.' decimals and '\n'
newlines regardless of locale.
"""

import json
import os
import re
import tempfile
from fractions import Fraction
from pathlib import Path

import numpy as np
import sympy

from .correlation import AnalysisReport, CorrelationProfile
from .errors import SequenceFormatError
from .mapping import FrequencyPlan, SequenceSet, set_from_matrix
from .sim import CollisionReport, SimScenario

_HEADER_RE = re.compile(r"^#\s*M=(\d+)\s+n=(\d+)\s+q=(\d+)\s+kind=(base|balanced)\s*$")


def _atomic_write_text(path, text):
    path = Path(path)
    fd, tmp = tempfile.mkstemp(dir=path.parent, prefix=path.name + ".", suffix=".tmp")
    try:
        with os.fdopen(fd, "w", encoding="utf-8", newline="\n") as fh:
            fh.write(text)
        os.replace(tmp, path)
    except BaseException:
        os.unlink(tmp)
        raise


def plan_from_spot_count(M) -> FrequencyPlan:
    """Recover the (p, b) plan from M = p^b; unique since p is prime."""
    factors = sympy.factorint(int(M))
    if len(factors) != 1:
        raise SequenceFormatError(f"spot count M={M} is not a prime power")
    (p, b), = factors.items()
    return FrequencyPlan(p=int(p), b=int(b))


def write_sequence_set(path, sset: SequenceSet):
    lines = [f"# M={sset.plan.M} n={sset.length} q={sset.q} kind={sset.kind}"]
    for member in sset.members:
        lines.append(",".join(str(int(h)) for h in member.hops))
    _atomic_write_text(path, "\n".join(lines) + "\n")


def read_sequence_set(path) -> SequenceSet:
    """Parse a sequence-set file; raises SequenceFormatError naming line/column."""
    text = Path(path).read_text(encoding="utf-8")
    lines = text.splitlines()
    if not lines:
        raise SequenceFormatError("empty sequence file", line=1)
    match = _HEADER_RE.match(lines[0])
    if not match:
        raise SequenceFormatError(
            "expected header '# M=<M> n=<n> q=<q> kind=<base|balanced>'", line=1
        )
    M, n, q, kind = int(match[1]), int(match[2]), int(match[3]), match[4]
    plan = plan_from_spot_count(M)

    rows = [line for line in lines[1:] if line.strip()]
    if len(rows) != q:
        raise SequenceFormatError(
            f"header promises q={q} sequences but file holds {len(rows)}",
            line=len(lines),
        )
    matrix = np.empty((q, n), dtype=np.int64)
    for r, row in enumerate(rows):
        fields = row.split(",")
        if len(fields) != n:
            raise SequenceFormatError(
                f"expected {n} entries, found {len(fields)}", line=r + 2
            )
        column = 1
        for c, tok in enumerate(fields):
            try:
                value = int(tok)
            except ValueError:
                raise SequenceFormatError(
                    f"not an integer: {tok.strip()!r}", line=r + 2, column=column
                ) from None
            if value < 0 or value >= M:
                raise SequenceFormatError(
                    f"spot index {value} outside [0, {M})", line=r + 2, column=column
                )
            matrix[r, c] = value
            column += len(tok) + 1
    return set_from_matrix(matrix, plan, kind)


def write_ledger_csv(path, ledger):
    lines = ["seq_index,op_count"]
    lines += [f"{a},{int(c)}" for a, c in enumerate(ledger.op_count)]
    _atomic_write_text(path, "\n".join(lines) + "\n")


def write_usage_csv(path, ledger):
    lines = [",".join(str(int(x)) for x in row) for row in ledger.usage]
    _atomic_write_text(path, "\n".join(lines) + "\n")


def write_ledger_json(path, ledger):
    payload = {
        "op_count": [int(x) for x in ledger.op_count],
        "usage": [[int(x) for x in row] for row in ledger.usage],
    }
    _atomic_write_text(path, json.dumps(payload, indent=2) + "\n")


def write_fairness_csv(path, report):
    lines = ["q,mean_ops,normalized"]
    for q, mean, norm in zip(report.q_values, report.mean_ops, report.normalized):
        lines.append(f"{int(q)},{float(mean)},{float(norm)}")
    lines.append(f"# h1 = {report.slope}")
    lines.append(f"# h2 = {report.intercept}")
    _atomic_write_text(path, "\n".join(lines) + "\n")


def write_fairness_json(path, report):
    payload = {
        "q": [int(x) for x in report.q_values],
        "mean_ops": [float(x) for x in report.mean_ops],
        "normalized": [float(x) for x in report.normalized],
        "h1": report.slope,
        "h2": report.intercept,
    }
    _atomic_write_text(path, json.dumps(payload, indent=2) + "\n")


def write_profile_csv(path, profile: CorrelationProfile):
    lines = ["delay,count"]
    lines += [f"{d},{int(c)}" for d, c in enumerate(profile.values)]
    _atomic_write_text(path, "\n".join(lines) + "\n")


def write_histograms_csv(path, histograms):
    lines = [",".join(str(int(x)) for x in row) for row in np.asarray(histograms)]
    _atomic_write_text(path, "\n".join(lines) + "\n")


def analysis_report_payload(report: AnalysisReport) -> dict:
    bound: Fraction = report.peng_fan
    return {
        "max_hamming": report.max_hamming,
        "peng_fan_bound": {
            "numerator": bound.numerator,
            "denominator": bound.denominator,
            "decimal": round(float(bound), 4),
        },
        "orthogonal_at_zero": report.orthogonal_at_zero,
        "no_hit_zone": report.no_hit_zone,
        "histograms": [[int(x) for x in row] for row in report.histograms],
    }


def write_analysis_report(path, report: AnalysisReport):
    _atomic_write_text(path, json.dumps(analysis_report_payload(report), indent=2) + "\n")


def collision_report_payload(report: CollisionReport) -> dict:
    return {
        "total_collisions": report.total_collisions,
        "per_pair": [[int(x) for x in row] for row in report.per_pair],
        "collision_rate": report.collision_rate,
    }


def load_scenario(path) -> SimScenario:
    """Read a scenario JSON: hops, optional offsets, path to a sequence file.

    A relative sequence path is resolved against the scenario file's
    directory.
    """
    path = Path(path)
    payload = json.loads(path.read_text(encoding="utf-8"))
    if not isinstance(payload, dict) or "hops" not in payload or "sequences" not in payload:
        raise SequenceFormatError("scenario JSON needs 'hops' and 'sequences' keys")
    seq_path = Path(payload["sequences"])
    if not seq_path.is_absolute():
        seq_path = path.parent / seq_path
    sset = read_sequence_set(seq_path)
    return SimScenario(
        sset=sset,
        hops=int(payload["hops"]),
        offsets=payload.get("offsets"),
    )
