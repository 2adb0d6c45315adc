"""Plain-text file formats: matrices, reflector chains, iteration traces.

All floats are written with 17 significant digits, which round-trips IEEE
doubles exactly. The formats are line-oriented and diffable:

  matrix file    first line "n p", then n rows of p numbers
  factored file  first line "HPROD n m", then m rows of n numbers (one
                 canonical reflector direction per row); the leading token
                 versions the format
  trace CSV      header "iter,residual,lambda_min,trace,dim_e1", one row per
                 completed iteration
"""

from __future__ import annotations

import csv
import io
from pathlib import Path

import numpy as np

from .core import HouseholderProduct, Reflector
from .decompose import DecompositionTrace, TraceRow

FLOAT_FMT = "%.17g"
PRODUCT_MAGIC = "HPROD"
TRACE_FIELDS = ("iter", "residual", "lambda_min", "trace", "dim_e1")


def format_matrix(M: np.ndarray) -> str:
    M = np.asarray(M, dtype=float)
    if M.ndim != 2:
        raise ValueError("expected a matrix")
    lines = [f"{M.shape[0]} {M.shape[1]}"]
    for row in M:
        lines.append(" ".join(FLOAT_FMT % value for value in row))
    return "\n".join(lines) + "\n"


def save_matrix(path, M: np.ndarray) -> None:
    Path(path).write_text(format_matrix(M))


def parse_matrix(text: str) -> np.ndarray:
    lines = [line for line in text.splitlines() if line.strip()]
    if not lines:
        raise ValueError("empty matrix file")
    header = lines[0].split()
    if len(header) != 2:
        raise ValueError(f"bad matrix header: {lines[0]!r}")
    rows, cols = int(header[0]), int(header[1])
    if len(lines) - 1 != rows:
        raise ValueError(f"expected {rows} matrix rows, found {len(lines) - 1}")
    M = np.empty((rows, cols))
    for i, line in enumerate(lines[1:]):
        values = line.split()
        if len(values) != cols:
            raise ValueError(f"row {i} has {len(values)} entries, expected {cols}")
        M[i] = [float(v) for v in values]
    return M


def load_matrix(path) -> np.ndarray:
    return parse_matrix(Path(path).read_text())


def save_product(path, product: HouseholderProduct) -> None:
    lines = [f"{PRODUCT_MAGIC} {product.n} {product.m}"]
    for factor in product.factors:
        lines.append(" ".join(FLOAT_FMT % value for value in factor.u))
    Path(path).write_text("\n".join(lines) + "\n")


def load_product(path) -> HouseholderProduct:
    lines = [line for line in Path(path).read_text().splitlines() if line.strip()]
    if not lines:
        raise ValueError("empty factored file")
    header = lines[0].split()
    if len(header) != 3 or header[0] != PRODUCT_MAGIC:
        raise ValueError(f"bad factored-file header: {lines[0]!r}")
    n, m = int(header[1]), int(header[2])
    if len(lines) - 1 != m:
        raise ValueError(f"expected {m} reflector rows, found {len(lines) - 1}")
    factors = []
    for line in lines[1:]:
        direction = np.array([float(v) for v in line.split()])
        if direction.shape != (n,):
            raise ValueError(f"reflector row has {direction.shape[0]} entries, expected {n}")
        factors.append(Reflector(direction))
    return HouseholderProduct(n, tuple(factors))


def format_trace_csv(trace: DecompositionTrace) -> str:
    out = io.StringIO()
    writer = csv.writer(out, lineterminator="\n")
    writer.writerow(TRACE_FIELDS)
    for row in trace.rows:
        writer.writerow(
            [
                row.iteration,
                FLOAT_FMT % row.residual,
                FLOAT_FMT % row.lambda_min,
                FLOAT_FMT % row.trace,
                row.dim_e1,
            ]
        )
    return out.getvalue()


def save_trace_csv(path, trace: DecompositionTrace) -> None:
    Path(path).write_text(format_trace_csv(trace))


def load_trace_csv(path) -> list[TraceRow]:
    with open(path, newline="") as handle:
        reader = csv.reader(handle)
        header = next(reader, None)
        if header is None or tuple(header) != TRACE_FIELDS:
            raise ValueError(f"bad trace header: {header!r}")
        rows = []
        for record in reader:
            rows.append(
                TraceRow(
                    iteration=int(record[0]),
                    residual=float(record[1]),
                    lambda_min=float(record[2]),
                    trace=float(record[3]),
                    dim_e1=int(record[4]),
                )
            )
    return rows
