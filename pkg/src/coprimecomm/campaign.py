"""Run verdict campaigns over groups and render the reports.

JSON report schema (``schema_version`` 1)::

    {
      "schema_version": 1,
      "tool_version": "...",
      "config": {"statements": [...], "k_range": [a, b] | null,
                 "max_order": int | null, "groups": [...] | null,
                 "group_files": [...], "witnesses": bool, "stable": bool},
      "summary": {"total": n, "pass": n, "fail": n, "vacuous": n, "skipped": n,
                  "by_statement": {statement: {status: n}}},
      "verdicts": [Verdict.to_dict(), ...],
      "total_elapsed": seconds | null
    }
"""

from __future__ import annotations

import time
from collections import Counter
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field

from . import __version__
from . import corpus
from . import verify as V
from .group import BudgetExceeded, GroupTable
from .words import WordSpec

SCHEMA_VERSION = 1
STATUSES = ("pass", "fail", "vacuous", "skipped")

DEFAULT_K = {
    "theorem_a": (2, 3),
    "theorem_b": (2, 3),
    "prop_gamma_residual": (2, 4),
    "lemma_delta_fitting": (0, 3),
    "thm_fitting_delta": (1, 4),
    "thm_pi_elements": (1, 2),
    "invstar": (0, 2),
}

# statements about one specific group, run once regardless of the corpus filter
FIXED_GROUP = {
    "counterexample_s3": ("S3", WordSpec.power(3)),
    "counterexample_a5": ("A5", WordSpec.a5_counterexample()),
}


class UsageError(ValueError):
    pass


def parse_k_range(text: str) -> tuple[int, int]:
    """``"2..3"`` -> (2, 3); ``"2"`` -> (2, 2)."""
    lo, sep, hi = text.partition("..")
    try:
        a = int(lo)
        b = int(hi) if sep else a
    except ValueError:
        raise UsageError(f"bad k range {text!r}; expected A..B") from None
    if a > b or a < 0:
        raise UsageError(f"bad k range {text!r}")
    return a, b


def check_statements(statements, k_range):
    for s in statements:
        if s not in V.STATEMENTS:
            raise UsageError(f"unknown statement {s!r}; choose from {', '.join(V.STATEMENTS)}")
        low = V.K_BOUNDS[s]
        if k_range is not None and low is not None and k_range[0] < low:
            raise UsageError(f"{s} needs k >= {low}, got {k_range[0]}")


def _ks(statement, k_range):
    a, b = k_range if k_range is not None else DEFAULT_K[statement]
    return range(a, b + 1)


def _skipped(name, order, statement, k, reason) -> V.Verdict:
    return V.Verdict(name, statement, k, False, False, False, group_order=order,
                     status="skipped", details={"reason": reason})


def group_verdicts(G: GroupTable, statements, k_range=None, minimal_simple=False) -> list[V.Verdict]:
    """All per-group verdicts for ``G`` in a fixed order."""
    out = []
    for s in statements:
        try:
            if s == "theorem_a":
                out += [V.theorem_a_verdict(G, k) for k in _ks(s, k_range)]
            elif s == "theorem_b":
                out += [V.theorem_b_verdict(G, k) for k in _ks(s, k_range)]
            elif s == "delta1_corollary":
                out.append(V.delta1_corollary_verdict(G))
            elif s == "prop_gamma_residual":
                out += [V.prop_gamma_residual_verdict(G, k) for k in _ks(s, k_range)]
            elif s == "lemma_delta_fitting":
                out += [V.lemma_delta_fitting_verdict(G, k) for k in _ks(s, k_range)]
            elif s == "thm_fitting_delta":
                out += [V.thm_fitting_delta_verdict(G, k) for k in _ks(s, k_range)]
            elif s == "thm_pi_elements":
                out += [V.thm_pi_elements_verdict(G, k, pi)
                        for k in _ks(s, k_range) for pi in V.pi_subsets(G)]
            elif s == "baumslag_wiegold":
                out.append(V.baumslag_wiegold_verdict(G))
            elif s == "invstar" and minimal_simple:
                out.append(V.invstar_check(G, max(_ks(s, k_range))))
        except BudgetExceeded as exc:
            out.append(_skipped(G.name or "G", G.order, s, None, str(exc)))
    return out


def _run_task(task) -> list[V.Verdict]:
    kind, ref, statements, k_range = task
    try:
        if kind == "fixed":
            name, word = FIXED_GROUP[statements[0]]
            G = corpus.get(name).group()
            return [V.counterexample_verdict(G, word, statements[0])]
        entry = corpus.get(ref) if kind == "builtin" else corpus.load_group_file(ref)
        G = entry.group()
    except BudgetExceeded as exc:
        return [_skipped(ref, None, s, None, str(exc)) for s in statements]
    return group_verdicts(G, statements, k_range, "minimal_simple" in entry.tags)


@dataclass
class CampaignReport:
    tool_version: str
    config: dict
    verdicts: list[V.Verdict]
    summary: dict = field(default_factory=dict)
    total_elapsed: float = 0.0

    def __post_init__(self):
        if not self.summary:
            self.summary = summarize(self.verdicts)

    @property
    def exit_code(self) -> int:
        if self.summary["fail"]:
            return 1
        if self.summary["skipped"]:
            return 3
        return 0

    def to_dict(self, witnesses: bool = False, stable: bool = False) -> dict:
        return {
            "schema_version": SCHEMA_VERSION,
            "tool_version": self.tool_version,
            "config": self.config,
            "summary": self.summary,
            "verdicts": [v.to_dict(witnesses=witnesses, stable=stable) for v in self.verdicts],
            "total_elapsed": None if stable else round(self.total_elapsed, 6),
        }


def summarize(verdicts) -> dict:
    counts = Counter(v.status for v in verdicts)
    by_statement: dict[str, dict[str, int]] = {}
    for v in verdicts:
        row = by_statement.setdefault(v.statement, {s: 0 for s in STATUSES})
        row[v.status] += 1
    summary = {"total": len(verdicts)}
    summary.update({s: counts.get(s, 0) for s in STATUSES})
    summary["by_statement"] = by_statement
    # groups where the power-closed delta*_1 condition disagrees with the plain one
    summary["delta1_power_variant_differs"] = [
        v.group_name for v in verdicts
        if v.statement == "delta1_corollary" and "left_with_powers" in v.details
        and v.details["left_with_powers"] != v.left_side
    ]
    return summary


def run_campaign(statements, k_range=None, max_order=None, groups=None, group_files=(),
                 jobs=1, witnesses=False, stable=False) -> CampaignReport:
    statements = list(statements) if statements else list(V.STATEMENTS)
    check_statements(statements, k_range)
    per_group = [s for s in statements if s not in FIXED_GROUP]
    try:
        entries = corpus.select(max_order=max_order, names=groups)
    except KeyError as exc:
        raise UsageError(str(exc.args[0])) from None
    tasks = []
    if per_group:
        tasks += [("builtin", e.name, per_group, k_range) for e in entries]
        tasks += [("file", str(p), per_group, k_range) for p in group_files]
    tasks += [("fixed", FIXED_GROUP[s][0], [s], None) for s in statements if s in FIXED_GROUP]

    start = time.perf_counter()
    if jobs > 1 and len(tasks) > 1:
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            results = list(pool.map(_run_task, tasks))
    else:
        results = [_run_task(t) for t in tasks]
    verdicts = [v for chunk in results for v in chunk]
    config = {
        "statements": statements,
        "k_range": list(k_range) if k_range else None,
        "max_order": max_order,
        "groups": list(groups) if groups else None,
        "group_files": [str(p) for p in group_files],
        "witnesses": witnesses,
        "stable": stable,
    }
    return CampaignReport(__version__, config, verdicts,
                          total_elapsed=time.perf_counter() - start)


def _yn(b: bool) -> str:
    return "yes" if b else "no"


def render_markdown(report: CampaignReport, witnesses: bool = False, stable: bool = False) -> str:
    s = report.summary
    lines = [
        "# Coprime commutator verification report",
        "",
        f"tool version {report.tool_version}; statements: {', '.join(report.config['statements'])}",
        "",
        f"total {s['total']}: pass {s['pass']}, fail {s['fail']}, "
        f"vacuous {s['vacuous']}, skipped {s['skipped']}",
    ]
    if not stable:
        lines.append(f"elapsed {report.total_elapsed:.2f}s")
    order = [st for st in report.config["statements"]]
    for statement in order:
        rows = [v for v in report.verdicts if v.statement == statement]
        if not rows:
            continue
        lines += ["", f"## {statement}", "",
                  "| group | \\|G\\| | k | left | right | equivalent | witness |",
                  "|---|---:|---|---|---|---|---|"]
        for v in rows:
            k = "" if v.parameter_k is None else str(v.parameter_k)
            if v.pi is not None:
                k += f", pi={{{','.join(map(str, v.pi))}}}"
            if v.witness is None:
                wit = ""
            elif witnesses:
                wit = str(v.witness).replace("|", "\\|")
            else:
                wit = "yes"
            eq = _yn(v.equivalent) if v.status != "vacuous" else "vacuous"
            if v.status == "skipped":
                eq = "skipped"
            order_txt = "" if v.group_order is None else str(v.group_order)
            lines.append(f"| {v.group_name} | {order_txt} | {k} | {_yn(v.left_side)} | "
                         f"{_yn(v.right_side)} | {eq} | {wit} |")
    return "\n".join(lines) + "\n"
