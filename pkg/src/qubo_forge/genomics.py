"""Patient mutation tables and the coverage / exclusivity count matrices.

Input is a tab-separated file with a ``patient<TAB>gene`` header and one
(patient, gene) incidence per line.  To use TCGA-LAML (or any cBioPortal
study), download the study's mutation table and keep the sample id and
Hugo symbol columns, in that order, under that header.
"""

from __future__ import annotations

import warnings
from dataclasses import dataclass
from itertools import combinations
from pathlib import Path

import numpy as np

from .errors import InstanceError, ParseError
from .problems import PathwayInstance

__all__ = [
    "MutationTable",
    "parse_mutations",
    "degree_matrix",
    "adjacency_matrix",
    "build_pathway_instance",
]

HEADER = ("patient", "gene")


@dataclass(frozen=True)
class MutationTable:
    """Ordered ``patient -> genes`` map.

    ``genes`` fixes the variable index of every gene: order of first
    appearance in the source rows.  Genes never seen in any patient cannot
    occur, so every indexed gene has a non-zero count.
    """

    patients: dict[str, frozenset[str]]
    genes: tuple[str, ...]

    @classmethod
    def from_rows(cls, rows) -> "MutationTable":
        patients: dict[str, set[str]] = {}
        genes: dict[str, None] = {}
        for patient, gene in rows:
            if not patient or not gene:
                raise InstanceError(f"empty patient or gene in row {(patient, gene)!r}")
            patients.setdefault(patient, set()).add(gene)
            genes.setdefault(gene, None)
        return cls({p: frozenset(g) for p, g in patients.items()}, tuple(genes))

    @property
    def index(self) -> dict[str, int]:
        return {g: i for i, g in enumerate(self.genes)}


def parse_mutations(path) -> MutationTable:
    text = Path(path).read_text(encoding="utf-8")
    lines = text.split("\n")
    if lines and lines[-1] == "":
        lines.pop()
    if not lines or tuple(lines[0].rstrip("\r").split("\t")) != HEADER:
        raise ParseError(f"{path}:1: expected header 'patient<TAB>gene'")
    rows = []
    for lineno, line in enumerate(lines[1:], start=2):
        line = line.rstrip("\r")
        if not line.strip():
            continue
        fields = line.split("\t")
        if len(fields) != 2:
            raise ParseError(f"{path}:{lineno}: expected 2 tab-separated columns, got {len(fields)}")
        patient, gene = (f.strip() for f in fields)
        if not patient or not gene:
            raise ParseError(f"{path}:{lineno}: empty field")
        rows.append((patient, gene))
    return MutationTable.from_rows(rows)


def degree_matrix(t: MutationTable) -> np.ndarray:
    """Diagonal matrix, ``d_ii`` = number of patients carrying gene ``i``."""
    idx = t.index
    d = np.zeros(len(t.genes), dtype=np.int64)
    for genes in t.patients.values():
        for g in genes:
            d[idx[g]] += 1
    return np.diag(d)


def adjacency_matrix(t: MutationTable) -> np.ndarray:
    """Symmetric ``a_ij`` = number of patients carrying both gene ``i`` and gene ``j``."""
    idx = t.index
    pair_counts: dict[tuple[int, int], int] = {}
    for genes in t.patients.values():
        for gi, gj in combinations(sorted(idx[g] for g in genes), 2):
            pair_counts[(gi, gj)] = pair_counts.get((gi, gj), 0) + 1
    a = np.zeros((len(t.genes),) * 2, dtype=np.int64)
    for (i, j), c in pair_counts.items():
        a[i, j] = a[j, i] = c
    return a


def build_pathway_instance(
    t: MutationTable, alpha: float = 1.0, k: int = 1, alpha_orth: float | None = None
) -> PathwayInstance:
    if not t.genes:
        raise InstanceError("mutation table is empty")
    if alpha < 1:
        warnings.warn(f"coverage weight alpha={alpha} is below 1", stacklevel=2)
    return PathwayInstance(
        degree=degree_matrix(t),
        adjacency=adjacency_matrix(t),
        labels=t.genes,
        alpha=float(alpha),
        k=int(k),
        alpha_orth=None if alpha_orth is None else float(alpha_orth),
    )
