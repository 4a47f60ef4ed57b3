"""JSON/CSV readers and writers for series, characters and newform data.

Rationals travel as "num" or "num/den" strings so values survive any JSON
implementation bit-exactly.
"""
from __future__ import annotations

import csv
import io
import json
import re
from pathlib import Path

from .characters import DirichletChar, char_from_table, quadratic_char, trivial_char
from .exactnum import CycloElem, InputError, cyclo_from_json, cyclo_to_json, rat_from_str, rat_to_str
from .newform import NewformSpec
from .qseries import QExp


def _int(obj, what: str, minimum: int = None) -> int:
    if not isinstance(obj, int) or isinstance(obj, bool):
        raise InputError(f"{what} must be an integer, got {obj!r}")
    if minimum is not None and obj < minimum:
        raise InputError(f"{what} must be >= {minimum}, got {obj}")
    return obj


_INT_RE = re.compile(r"-?[0-9]+\Z")


def _int_key(key: str, what: str) -> int:
    if not isinstance(key, str) or not _INT_RE.match(key):
        raise InputError(f"bad {what} key {key!r}")
    return int(key)


def _int_value(v, what: str) -> int:
    if isinstance(v, str) and _INT_RE.match(v):
        return int(v)
    return _int(v, what)


def _dict(obj, keys: set, what: str, optional: set = frozenset()) -> dict:
    if not isinstance(obj, dict):
        raise InputError(f"{what} must be a JSON object")
    missing = keys - set(obj)
    extra = set(obj) - keys - optional
    if missing or extra:
        raise InputError(f"{what}: missing {sorted(missing)}, unexpected {sorted(extra)}")
    return obj


# --- q-expansions ----------------------------------------------------------

def qexp_to_json(f: QExp) -> dict:
    if f.order is None:
        fld = {"kind": "rational"}
        coeffs = {str(n): rat_to_str(c) for n, c in f.coeffs.items()}
    else:
        fld = {"kind": "cyclotomic", "order": f.order}
        coeffs = {str(n): cyclo_to_json(c) for n, c in f.coeffs.items()}
    return {"weight": f.weight, "width": f.width, "field": fld, "trunc": f.trunc,
            "coefficients": coeffs}


def qexp_from_json(obj) -> QExp:
    obj = _dict(obj, {"weight", "width", "field", "trunc", "coefficients"}, "q-expansion")
    fld = obj["field"]
    if not isinstance(fld, dict) or fld.get("kind") not in ("rational", "cyclotomic"):
        raise InputError(f"bad field {fld!r}")
    order = None
    if fld["kind"] == "cyclotomic":
        _dict(fld, {"kind", "order"}, "field")
        order = _int(fld["order"], "field order", 1)
    else:
        _dict(fld, {"kind"}, "field")
    raw = obj["coefficients"]
    if not isinstance(raw, dict):
        raise InputError("coefficients must be a JSON object")
    coeffs = {}
    for key, val in raw.items():
        n = _int_key(key, "coefficient")
        if isinstance(val, str):
            coeffs[n] = rat_from_str(val)
        elif isinstance(val, dict) and order is not None:
            coeffs[n] = cyclo_from_json(val)
        else:
            raise InputError(f"bad coefficient at {key}: {val!r}")
    weight = _int(obj["weight"], "weight", 2)
    return QExp(weight, _int(obj["width"], "width", 1), _int(obj["trunc"], "trunc", 1),
                coeffs, order)


# --- characters ------------------------------------------------------------

def char_to_json(chi: DirichletChar) -> dict:
    return {"modulus": chi.modulus, "order": chi.order,
            "values": {str(j): e for j, e in sorted(chi.values.items())}}


def char_from_json(obj) -> DirichletChar:
    if isinstance(obj, str):
        return parse_char_shorthand(obj)
    obj = _dict(obj, {"modulus", "order", "values"}, "character")
    vals = obj["values"]
    if not isinstance(vals, dict):
        raise InputError("character values must be a JSON object")
    table = {_int_key(j, "character"): _int(e, "character exponent") for j, e in vals.items()}
    return char_from_table(_int(obj["modulus"], "modulus", 1), table,
                           _int(obj["order"], "order", 1))


def parse_char_shorthand(s: str) -> DirichletChar:
    """``quadratic:N`` or ``trivial:K``."""
    kind, _, arg = s.partition(":")
    if not _INT_RE.match(arg):
        raise InputError(f"bad character shorthand {s!r}")
    if kind == "quadratic":
        return quadratic_char(int(arg))
    if kind == "trivial":
        if int(arg) < 1:
            raise InputError("modulus must be positive")
        return trivial_char(int(arg))
    raise InputError(f"unknown character kind {kind!r}")


def load_char(spec: str) -> DirichletChar:
    """A shorthand string, or a path to a character JSON file."""
    if ":" in spec and not Path(spec).exists():
        return parse_char_shorthand(spec)
    return char_from_json(read_json(spec))


# --- newforms ----------------------------------------------------------------

def newform_to_json(spec: NewformSpec) -> dict:
    return {"weight": spec.weight, "level": spec.level,
            "character": char_to_json(spec.character),
            "prime_coeffs": {str(p): b for p, b in spec.prime_coeffs.items()}}


def _newform_header(obj, extra: set) -> tuple:
    obj = _dict(obj, {"weight", "level", "character"} | extra, "newform")
    return (_int(obj["weight"], "weight", 2), _int(obj["level"], "level", 1),
            char_from_json(obj["character"]))


def newform_from_json(obj) -> NewformSpec:
    weight, level, chi = _newform_header(obj, {"prime_coeffs"})
    pc = obj["prime_coeffs"]
    if not isinstance(pc, dict):
        raise InputError("prime_coeffs must be a JSON object")
    coeffs = {_int_key(p, "prime"): _int_value(b, f"b({p})") for p, b in pc.items()}
    return NewformSpec(weight, level, chi, coeffs)


def newform_from_csv(text: str, sidecar) -> NewformSpec:
    """``p,b_p`` rows (optional header, ``#`` comments) plus a JSON sidecar
    holding weight, level and character."""
    weight, level, chi = _newform_header(sidecar, set())
    coeffs = {}
    for lineno, row in enumerate(csv.reader(io.StringIO(text)), start=1):
        if not row or row[0].strip().startswith("#"):
            continue
        if len(row) != 2:
            raise InputError(f"line {lineno}: expected 'p,b_p'")
        p, b = (c.strip() for c in row)
        if lineno == 1 and not _INT_RE.match(p):
            continue  # header
        if not _INT_RE.match(p) or not _INT_RE.match(b):
            raise InputError(f"line {lineno}: non-integer entry {row!r}")
        if int(p) in coeffs:
            raise InputError(f"line {lineno}: prime {p} repeated")
        coeffs[int(p)] = int(b)
    return NewformSpec(weight, level, chi, coeffs)


def load_newform(path, sidecar=None) -> NewformSpec:
    path = Path(path)
    if path.suffix.lower() == ".csv":
        if sidecar is None:
            sidecar = path.with_suffix(".json")
            if not sidecar.exists():
                raise InputError(f"CSV newform {path} needs a JSON sidecar")
        return newform_from_csv(path.read_text(), read_json(sidecar))
    return newform_from_json(read_json(path))


# --- coefficient sequences ---------------------------------------------------

def sequence_to_json(b, spec: NewformSpec) -> dict:
    return {"weight": spec.weight, "level": spec.level, "nmax": len(b) - 1,
            "coefficients": [str(x) for x in b[1:]]}


def sequence_from_json(obj) -> list:
    """b(0..nmax) with the b(0) = 0 placeholder restored."""
    obj = _dict(obj, {"weight", "level", "nmax", "coefficients"}, "sequence")
    vals = obj["coefficients"]
    if not isinstance(vals, list) or len(vals) != _int(obj["nmax"], "nmax", 1):
        raise InputError("coefficient list length must equal nmax")
    return [0] + [_int_value(v, "coefficient") for v in vals]


# --- files -------------------------------------------------------------------

def read_json(path):
    try:
        with open(path) as fh:
            return json.load(fh)
    except json.JSONDecodeError as exc:
        raise InputError(f"{path}: invalid JSON ({exc})") from None


def write_json(obj, path=None) -> str:
    text = json.dumps(obj, indent=2, sort_keys=False) + "\n"
    if path is not None and str(path) != "-":
        Path(path).write_text(text)
    return text


def load_qexp(path) -> QExp:
    return qexp_from_json(read_json(path))
