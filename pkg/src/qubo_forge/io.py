"""File formats: QUBO/Ising JSON, graph edge lists, stock and risk CSVs."""

from __future__ import annotations

import csv
import json
import math
from pathlib import Path

import numpy as np

from .errors import InstanceError, ParseError
from .model import IsingModel, QuboModel, normalize
from .problems import Graph, OrderPartitionInstance

__all__ = [
    "dumps_qubo",
    "loads_qubo",
    "read_qubo",
    "write_qubo",
    "loads_ising",
    "read_ising",
    "write_ising",
    "read_graph",
    "parse_graph",
    "read_order_partition",
]


def _number(value, where: str) -> float:
    if isinstance(value, bool) or not isinstance(value, (int, float)):
        raise ParseError(f"{where}: expected a number, got {value!r}")
    value = float(value)
    if not math.isfinite(value):
        raise ParseError(f"{where}: coefficient is not finite")
    return value


def _index(value, where: str) -> int:
    if isinstance(value, bool) or not isinstance(value, int):
        raise ParseError(f"{where}: expected an integer index, got {value!r}")
    return value


def _load_json(text: str, source: str) -> dict:
    try:
        data = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ParseError(f"{source}:{exc.lineno}: malformed JSON ({exc.msg})") from None
    if not isinstance(data, dict):
        raise ParseError(f"{source}: top level must be an object")
    return data


def _check_keys(data: dict, allowed: set[str], required: set[str], source: str):
    unknown = set(data) - allowed
    if unknown:
        raise ParseError(f"{source}: unknown key(s) {sorted(unknown)}")
    missing = required - set(data)
    if missing:
        raise ParseError(f"{source}: missing key(s) {sorted(missing)}")


def dumps_qubo(model: QuboModel) -> str:
    return json.dumps(model.to_dict()) + "\n"


def loads_qubo(text: str, source: str = "<string>") -> QuboModel:
    """Parse ``{"n", "constant", "terms": [[i, j, c], ...]}`` with ``i <= j``."""
    data = _load_json(text, source)
    _check_keys(data, {"n", "constant", "terms"}, {"n", "terms"}, source)
    n = _index(data["n"], f"{source}: field 'n'")
    if n < 1:
        raise ParseError(f"{source}: field 'n' must be >= 1")
    constant = _number(data.get("constant", 0.0), f"{source}: field 'constant'")
    terms = data["terms"]
    if not isinstance(terms, list):
        raise ParseError(f"{source}: field 'terms' must be a list")
    linear: dict[int, float] = {}
    quadratic: dict[tuple[int, int], float] = {}
    for k, term in enumerate(terms):
        where = f"{source}: terms[{k}]"
        if not isinstance(term, list) or len(term) != 3:
            raise ParseError(f"{where}: expected [i, j, coeff]")
        i = _index(term[0], where)
        j = _index(term[1], where)
        coeff = _number(term[2], where)
        if not 0 <= i <= j < n:
            raise ParseError(f"{where}: indices ({i}, {j}) must satisfy 0 <= i <= j < n={n}")
        if i == j:
            linear[i] = linear.get(i, 0.0) + coeff
        else:
            quadratic[(i, j)] = quadratic.get((i, j), 0.0) + coeff
    return normalize(QuboModel(n, linear, quadratic, constant))


def read_qubo(path) -> QuboModel:
    path = Path(path)
    return loads_qubo(path.read_text(encoding="utf-8"), str(path))


def write_qubo(model: QuboModel, path) -> None:
    Path(path).write_text(dumps_qubo(model), encoding="utf-8")


def loads_ising(text: str, source: str = "<string>", from_paper_convention: bool = False) -> IsingModel:
    """Parse ``{"n", "offset", "h": [[i, v]], "J": [[i, j, v]]}``.

    With ``from_paper_convention`` the file is read as
    ``H = -sum J s s - sum h s`` and both ``h`` and ``J`` are negated.
    """
    data = _load_json(text, source)
    _check_keys(data, {"n", "offset", "h", "J"}, {"n"}, source)
    n = _index(data["n"], f"{source}: field 'n'")
    if n < 1:
        raise ParseError(f"{source}: field 'n' must be >= 1")
    offset = _number(data.get("offset", 0.0), f"{source}: field 'offset'")
    h: dict[int, float] = {}
    for k, entry in enumerate(data.get("h", [])):
        where = f"{source}: h[{k}]"
        if not isinstance(entry, list) or len(entry) != 2:
            raise ParseError(f"{where}: expected [i, value]")
        i = _index(entry[0], where)
        if not 0 <= i < n:
            raise ParseError(f"{where}: index {i} out of range for n={n}")
        h[i] = h.get(i, 0.0) + _number(entry[1], where)
    J: dict[tuple[int, int], float] = {}
    for k, entry in enumerate(data.get("J", [])):
        where = f"{source}: J[{k}]"
        if not isinstance(entry, list) or len(entry) != 3:
            raise ParseError(f"{where}: expected [i, j, value]")
        i, j = _index(entry[0], where), _index(entry[1], where)
        if i > j:
            i, j = j, i
        if not 0 <= i < j < n:
            raise ParseError(f"{where}: indices ({i}, {j}) must be distinct and < n={n}")
        J[(i, j)] = J.get((i, j), 0.0) + _number(entry[2], where)
    if from_paper_convention:
        return IsingModel.from_paper_convention(n, h, J, offset)
    return IsingModel(n, h, J, offset)


def read_ising(path, from_paper_convention: bool = False) -> IsingModel:
    path = Path(path)
    return loads_ising(path.read_text(encoding="utf-8"), str(path), from_paper_convention)


def write_ising(model: IsingModel, path) -> None:
    data = {
        "n": model.n,
        "offset": model.offset,
        "h": [[i, v] for i, v in sorted(model.h.items())],
        "J": [[i, j, v] for (i, j), v in sorted(model.J.items())],
    }
    Path(path).write_text(json.dumps(data) + "\n", encoding="utf-8")


def parse_graph(text: str, source: str = "<string>") -> Graph:
    """``#`` comments, then ``n m``, then ``m`` lines of ``u v``."""
    rows = []
    for lineno, line in enumerate(text.splitlines(), start=1):
        stripped = line.strip()
        if stripped and not stripped.startswith("#"):
            rows.append((lineno, stripped.split()))
    if not rows:
        raise ParseError(f"{source}: missing 'n m' header line")
    lineno, header = rows[0]
    try:
        n, m = (int(tok) for tok in header)
    except ValueError:
        raise ParseError(f"{source}:{lineno}: expected 'n m'") from None
    if len(rows) - 1 != m:
        raise ParseError(f"{source}: header declares {m} edges, found {len(rows) - 1}")
    edges = []
    for lineno, toks in rows[1:]:
        try:
            u, v = (int(tok) for tok in toks)
        except ValueError:
            raise ParseError(f"{source}:{lineno}: expected 'u v'") from None
        edges.append((u, v))
    try:
        return Graph(n, tuple(edges))
    except InstanceError as exc:
        raise ParseError(f"{source}: {exc}") from None


def read_graph(path) -> Graph:
    path = Path(path)
    return parse_graph(path.read_text(encoding="utf-8"), str(path))


def _read_csv(path) -> list[list[str]]:
    with open(path, newline="", encoding="utf-8") as fh:
        return [row for row in csv.reader(fh) if any(cell.strip() for cell in row)]


def read_order_partition(stocks_path, risks_path, a: float = 1.0, b: float = 1.0) -> OrderPartitionInstance:
    """Stocks CSV (``stock,value``) plus a risk CSV whose header names the stocks.

    Risk columns are matched to stocks by name.
    """
    stocks = _read_csv(stocks_path)
    if not stocks or [c.strip() for c in stocks[0]] != ["stock", "value"]:
        raise ParseError(f"{stocks_path}:1: expected header 'stock,value'")
    names, values = [], []
    for lineno, row in enumerate(stocks[1:], start=2):
        if len(row) != 2:
            raise ParseError(f"{stocks_path}:{lineno}: expected 2 columns, got {len(row)}")
        try:
            values.append(float(row[1]))
        except ValueError:
            raise ParseError(f"{stocks_path}:{lineno}: bad value {row[1]!r}") from None
        names.append(row[0].strip())
    if len(set(names)) != len(names):
        raise ParseError(f"{stocks_path}: duplicate stock names")

    risks = _read_csv(risks_path)
    if not risks:
        raise ParseError(f"{risks_path}: empty risk file")
    header = [c.strip() for c in risks[0]]
    if sorted(header) != sorted(names):
        raise ParseError(f"{risks_path}:1: risk columns {header} do not match stocks {names}")
    col = {name: k for k, name in enumerate(header)}
    matrix = []
    for lineno, row in enumerate(risks[1:], start=2):
        if len(row) != len(header):
            raise ParseError(f"{risks_path}:{lineno}: expected {len(header)} columns, got {len(row)}")
        try:
            cells = [float(c) for c in row]
        except ValueError:
            raise ParseError(f"{risks_path}:{lineno}: non-numeric exposure") from None
        matrix.append([cells[col[name]] for name in names])
    if not matrix:
        raise ParseError(f"{risks_path}: no risk factor rows")
    try:
        return OrderPartitionInstance(tuple(values), np.array(matrix), a, b, tuple(names))
    except InstanceError as exc:
        raise ParseError(str(exc)) from None
