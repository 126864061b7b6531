"""Report assembly: JSON documents, delimited tables and figures."""
from __future__ import annotations

import csv
import json
from pathlib import Path
from typing import Sequence

from .harness import SearchResult, TheoremReport

TSV_FIELDS = ("id", "verdict", "checked", "seen", "elapsed_s", "witness")


def theorem_entry(r: TheoremReport | SearchResult) -> dict:
    verdict = r.verdict if isinstance(r, TheoremReport) else r.outcome
    entry = {"id": r.id, "verdict": verdict, "checked": r.structures_checked, "seen": r.structures_seen}
    if r.witness is not None:
        entry["witness"] = r.witness
    if isinstance(r, TheoremReport) and r.hypothesis_failures:
        entry["hypothesis_failures"] = dict(sorted(r.hypothesis_failures.items()))
    return entry


def document(command: str, structures=(), theorems: Sequence = (), timings=None) -> dict:
    return {
        "command": command,
        "structures": list(structures),
        "theorems": [theorem_entry(t) for t in theorems],
        "timings": dict(timings or {}),
    }


def dumps(doc: dict) -> str:
    return json.dumps(doc, indent=2, sort_keys=False, default=str)


def write_tsv(path: Path, results: Sequence) -> None:
    with open(path, "w", newline="") as fh:
        w = csv.writer(fh, delimiter="\t", lineterminator="\n")
        w.writerow(TSV_FIELDS)
        for r in results:
            e = theorem_entry(r)
            w.writerow([e["id"], e["verdict"], e["checked"], e["seen"], f"{r.elapsed:.4f}",
                        json.dumps(e.get("witness")) if "witness" in e else ""])


COLORS = {"pass": "#4c9a2a", "exhausted": "#4c9a2a", "vacuous": "#e39b1b", "fail": "#c0392b", "witness": "#c0392b"}


def plot_theorems(path: Path, results: Sequence, title: str = "") -> None:
    """Bar per theorem: structures meeting the hypotheses vs. the rest of the domain."""
    import matplotlib

    matplotlib.use("Agg")
    import matplotlib.pyplot as plt

    entries = [theorem_entry(r) for r in results]
    ids = [e["id"] for e in entries]
    checked = [e["checked"] for e in entries]
    rest = [e["seen"] - e["checked"] for e in entries]
    fig, ax = plt.subplots(figsize=(7, 0.32 * len(ids) + 1.2))
    y = range(len(ids))
    ax.barh(y, checked, color=[COLORS[e["verdict"]] for e in entries], label="hypotheses met")
    ax.barh(y, rest, left=checked, color="#cccccc", label="hypotheses not met")
    ax.set_yticks(list(y))
    ax.set_yticklabels(ids, fontsize=8)
    ax.invert_yaxis()
    ax.set_xlabel("structures")
    if title:
        ax.set_title(title, fontsize=10)
    ax.legend(fontsize=7, loc="lower right")
    fig.tight_layout()
    fig.savefig(path, dpi=120)
    plt.close(fig)


def write_report_dir(directory, doc: dict, results: Sequence, title: str = "") -> list[Path]:
    """Write ``report.json``, ``theorems.tsv`` and ``theorems.png`` into ``directory``."""
    out = Path(directory)
    out.mkdir(parents=True, exist_ok=True)
    paths = [out / "report.json", out / "theorems.tsv", out / "theorems.png"]
    paths[0].write_text(dumps(doc) + "\n")
    write_tsv(paths[1], results)
    plot_theorems(paths[2], results, title)
    return paths
