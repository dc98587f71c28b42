"""File formats: matrix JSON, spec JSON, verdict CSV, experiment configs.

Numbers cross the file boundary losslessly: floats are written with
``repr`` (shortest round-trip form) and eigenvalue phases as exact "k/l"
fractions. Verdict CSVs are semicolon separated because the s and phase
columns contain commas.
"""

from __future__ import annotations

import json
from dataclasses import dataclass

import numpy as np

from .fock import ParticleType
from .permutations import Permutation, RootOfUnity
from .suppression import EventClass, EventVerdict
from .unitaries import UnitarySpec

VERDICT_COLUMNS = (
    "s",
    "lambda_phases",
    "boson_suppressed",
    "fermion_suppressed",
    "p_boson",
    "p_fermion",
    "p_dist",
    "class",
)


# --- complex matrices -------------------------------------------------------

def matrix_to_json(matrix) -> dict:
    m = np.asarray(matrix, dtype=complex)
    return {
        "rows": m.shape[0],
        "cols": m.shape[1],
        "data": [[float(z.real), float(z.imag)] for z in m.ravel()],
    }


def matrix_from_json(payload: dict) -> np.ndarray:
    try:
        rows, cols, data = payload["rows"], payload["cols"], payload["data"]
    except (KeyError, TypeError) as exc:
        raise ValueError(f"matrix JSON needs rows/cols/data: {exc}") from exc
    if len(data) != rows * cols:
        raise ValueError(f"matrix JSON has {len(data)} entries, expected {rows * cols}")
    flat = [complex(re, im) for re, im in data]
    return np.array(flat, dtype=complex).reshape(rows, cols)


# --- occupations and permutations --------------------------------------------

def parse_occupation(text: str) -> tuple[int, ...]:
    """Occupation lists travel as plain JSON integer arrays."""
    try:
        values = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ValueError(f"cannot parse occupation list {text!r}: {exc}") from exc
    if not isinstance(values, list) or not all(isinstance(v, int) for v in values):
        raise ValueError(f"occupation list must be a JSON array of integers: {text!r}")
    return tuple(values)


def parse_permutation(value, n: int | None = None) -> Permutation:
    """Accept cycle notation ``"(1 2 3)(4 5)"`` or a 1-based one-line array."""
    if isinstance(value, str):
        text = value.strip()
        if text.startswith("["):
            return Permutation.from_one_line(json.loads(text))
        return Permutation.parse(text, n=n)
    return Permutation.from_one_line(value)


# --- unitary specs -----------------------------------------------------------

def spec_from_json(payload: dict, n: int | None = None) -> UnitarySpec:
    """UnitarySpec from its JSON form.

    Keys: ``permutation`` (required), ``theta``, ``sigma`` (phase angle
    lists), ``seed`` (degenerate-rotation seed), ``column_order`` (1-based).
    """
    if "permutation" not in payload:
        raise ValueError("unitary spec JSON needs a 'permutation' key")
    known = {"permutation", "theta", "sigma", "seed", "column_order"}
    unknown = set(payload) - known
    if unknown:
        raise ValueError(f"unknown unitary spec keys: {sorted(unknown)}")
    perm = parse_permutation(payload["permutation"], n=n)
    return UnitarySpec(
        permutation=perm,
        theta_phases=tuple(payload["theta"]) if payload.get("theta") is not None else None,
        sigma_phases=tuple(payload["sigma"]) if payload.get("sigma") is not None else None,
        rotation_seed=payload.get("seed"),
        column_order=tuple(payload["column_order"])
        if payload.get("column_order") is not None
        else None,
    )


def spec_to_json(spec: UnitarySpec) -> dict:
    payload: dict = {"permutation": spec.permutation.cycle_string()}
    if spec.theta_phases is not None:
        payload["theta"] = list(spec.theta_phases)
    if spec.sigma_phases is not None:
        payload["sigma"] = list(spec.sigma_phases)
    if spec.rotation_seed is not None:
        payload["seed"] = spec.rotation_seed
    if spec.column_order is not None:
        payload["column_order"] = list(spec.column_order)
    return payload


# --- verdict tables ---------------------------------------------------------

def _fmt_occupation(s) -> str:
    return json.dumps(list(s), separators=(",", ":"))


def _fmt_optional_float(value) -> str:
    return "" if value is None else repr(float(value))


def _fmt_optional_bool(value) -> str:
    return "" if value is None else ("true" if value else "false")


def verdict_row(verdict: EventVerdict, old_fermion: bool | None = None) -> list[str]:
    row = [
        _fmt_occupation(verdict.occupation_out),
        ",".join(str(v) for v in verdict.distribution),
        _fmt_optional_bool(verdict.law_suppressed_boson),
        _fmt_optional_bool(verdict.law_suppressed_fermion),
        _fmt_optional_float(verdict.p_boson),
        _fmt_optional_float(verdict.p_fermion),
        _fmt_optional_float(verdict.p_dist),
        verdict.event_class.value if verdict.event_class else "",
    ]
    if old_fermion is not None:
        row.append(_fmt_optional_bool(old_fermion))
    return row


def write_verdict_csv(path, verdicts, old_fermion_flags=None) -> None:
    columns = list(VERDICT_COLUMNS)
    if old_fermion_flags is not None:
        columns.append("old_fermion_suppressed")
        rows = [verdict_row(v, old) for v, old in zip(verdicts, old_fermion_flags)]
    else:
        rows = [verdict_row(v) for v in verdicts]
    with open(path, "w", encoding="utf-8", newline="\n") as fh:
        fh.write(";".join(columns) + "\n")
        for row in rows:
            fh.write(";".join(row) + "\n")


@dataclass(frozen=True)
class VerdictTable:
    columns: tuple[str, ...]
    verdicts: tuple[EventVerdict, ...]
    old_fermion_flags: tuple[bool, ...] | None


def read_verdict_csv(path) -> VerdictTable:
    with open(path, encoding="utf-8") as fh:
        lines = [line.rstrip("\n") for line in fh if line.strip()]
    columns = tuple(lines[0].split(";"))
    if columns[: len(VERDICT_COLUMNS)] != VERDICT_COLUMNS:
        raise ValueError(f"unexpected verdict CSV header: {columns}")
    has_old = "old_fermion_suppressed" in columns
    verdicts = []
    old_flags = []
    for line in lines[1:]:
        cells = line.split(";")
        record = dict(zip(columns, cells))
        verdicts.append(
            EventVerdict(
                occupation_out=tuple(json.loads(record["s"])),
                distribution=tuple(
                    RootOfUnity.parse(tok) for tok in record["lambda_phases"].split(",") if tok
                ),
                law_suppressed_boson=record["boson_suppressed"] == "true",
                law_suppressed_fermion=(
                    None if record["fermion_suppressed"] == "" else record["fermion_suppressed"] == "true"
                ),
                p_boson=None if record["p_boson"] == "" else float(record["p_boson"]),
                p_fermion=None if record["p_fermion"] == "" else float(record["p_fermion"]),
                p_dist=None if record["p_dist"] == "" else float(record["p_dist"]),
                event_class=EventClass(record["class"]) if record["class"] else None,
            )
        )
        if has_old:
            old_flags.append(record["old_fermion_suppressed"] == "true")
    return VerdictTable(columns, tuple(verdicts), tuple(old_flags) if has_old else None)


def write_fit_csv(path, fit) -> None:
    with open(path, "w", encoding="utf-8", newline="\n") as fh:
        fh.write("value;mean_deviation\n")
        for g, m in zip(fit.grid, fit.measured):
            fh.write(f"{repr(float(g))};{repr(float(m))}\n")


def read_fit_csv(path) -> tuple[tuple[float, ...], tuple[float, ...]]:
    with open(path, encoding="utf-8") as fh:
        lines = [line.rstrip("\n") for line in fh if line.strip()]
    if lines[0] != "value;mean_deviation":
        raise ValueError(f"unexpected fit CSV header: {lines[0]!r}")
    pairs = [tuple(float(cell) for cell in line.split(";")) for line in lines[1:]]
    return tuple(g for g, _ in pairs), tuple(m for _, m in pairs)


def write_metadata(path, metadata: dict) -> None:
    with open(path, "w", encoding="utf-8", newline="\n") as fh:
        json.dump(metadata, fh, indent=2)
        fh.write("\n")


# --- experiment configs ------------------------------------------------------

EXPERIMENT_KINDS = (
    "mean-probabilities",
    "fourier-comparison",
    "unitary-robustness",
    "distinguishability-robustness",
)


def check_experiment_config(payload: dict) -> list[str]:
    """Collect every schema problem instead of stopping at the first one."""
    problems = []
    if not isinstance(payload, dict):
        return ["experiment config must be a JSON object"]
    kind = payload.get("kind")
    if kind not in EXPERIMENT_KINDS:
        problems.append(f"'kind' must be one of {EXPERIMENT_KINDS}, got {kind!r}")
        return problems

    def need(key, types, note=""):
        if key not in payload:
            problems.append(f"missing key {key!r} {note}".rstrip())
        elif not isinstance(payload[key], types):
            problems.append(f"key {key!r} has wrong type {type(payload[key]).__name__}")

    def occupation_ok(key):
        value = payload.get(key)
        if isinstance(value, list) and not all(isinstance(v, int) and v >= 0 for v in value):
            problems.append(f"key {key!r} must hold non-negative integers")

    if kind == "mean-probabilities":
        need("permutation", (str, list))
        need("input_state", list)
        occupation_ok("input_state")
        if "types" in payload:
            if not isinstance(payload["types"], list):
                problems.append("'types' must be a list")
            else:
                for t in payload["types"]:
                    try:
                        ParticleType.parse(t)
                    except (ValueError, TypeError):
                        problems.append(f"unknown particle type {t!r}")
    elif kind == "fourier-comparison":
        need("modes", int)
        need("order", int)
        need("input_state", list)
        occupation_ok("input_state")
    else:
        need("input_state", list)
        need("target_output", list)
        occupation_ok("input_state")
        occupation_ok("target_output")
        need("grid", list)
        if isinstance(payload.get("grid"), list) and not all(
            isinstance(g, (int, float)) and g > 0 for g in payload["grid"]
        ):
            problems.append("'grid' must hold positive numbers")
        if "fourier" in payload:
            if not (
                isinstance(payload["fourier"], list)
                and len(payload["fourier"]) == 2
                and all(isinstance(x, int) for x in payload["fourier"])
            ):
                problems.append("'fourier' must be [modes, order]")
        elif "permutation" not in payload:
            problems.append("robustness config needs 'permutation' or 'fourier'")
        if "particle" in payload and payload["particle"] not in ("boson", "fermion"):
            problems.append("'particle' must be 'boson' or 'fermion'")
    return problems
