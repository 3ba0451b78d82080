"""JSON documents for algebras and deformations.

Scalars are exact: integers or strings ``"p"`` / ``"p/q"``.  Decimals and
floats are rejected.  Structure constants are sparse ``[i, j, k, value]``
lists; missing products are zero.
"""

from __future__ import annotations

import json
import re
from importlib import resources
from pathlib import Path
from typing import Any, Optional, Union

from gmpy2 import mpq

from . import linalg as la
from .algebra import CoisotropicAlgebra, structure_tensor, validate_algebra
from .errors import AlgebraMismatch, CoisoError, ParseError, ValidationError
from .hochschild import Cochain
from .linalg import Subspace
from .modules import CoisotropicModule
from .series import MAX_ORDER

_RATIONAL = re.compile(r"^\s*[+-]?\d+(\s*/\s*\d+)?\s*$")

PathLike = Union[str, Path]


def parse_scalar(value: Any, where: str):
    if isinstance(value, bool):
        raise ParseError(f"expected a rational, got {value!r}", where)
    if isinstance(value, int):
        return mpq(value)
    if isinstance(value, str) and _RATIONAL.match(value):
        num, _, den = value.replace(" ", "").partition("/")
        if den and int(den) == 0:
            raise ParseError(f"zero denominator in {value!r}", where)
        return mpq(int(num), int(den) if den else 1)
    raise ParseError(f"expected an integer or 'p/q' string, got {value!r}", where)


def format_scalar(x) -> str:
    return str(mpq(x))


def _require(doc: dict, key: str, where: str = ""):
    if key not in doc:
        raise ParseError(f"missing field '{key}'", where or key)
    return doc[key]


def _count(value: Any, where: str) -> int:
    if isinstance(value, bool) or not isinstance(value, int) or value < 0:
        raise ParseError(f"expected a nonnegative integer, got {value!r}", where)
    return value


def _vector(value: Any, n: int, where: str):
    if not isinstance(value, list) or len(value) != n:
        raise ParseError(f"expected a list of {n} rationals", where)
    return la.vector([parse_scalar(v, f"{where}[{i}]") for i, v in enumerate(value)])


def _entries(value: Any, dim: int, arity: int, where: str) -> list:
    """Sparse ``[i_1, ..., i_arity, k, value]`` entries with range checks."""
    if not isinstance(value, list):
        raise ParseError("expected a list of entries", where)
    out = []
    for e, entry in enumerate(value):
        at = f"{where}[{e}]"
        if not isinstance(entry, list) or len(entry) != arity + 2:
            raise ParseError(f"expected [{', '.join(['i'] * arity + ['k', 'value'])}]", at)
        idx = []
        for p, i in enumerate(entry[:-1]):
            if isinstance(i, bool) or not isinstance(i, int) or not 0 <= i < dim:
                raise ParseError(f"index {i!r} out of range 0..{dim - 1}", f"{at}[{p}]")
            idx.append(i)
        out.append((*idx, parse_scalar(entry[-1], f"{at}[{arity + 1}]")))
    return out


def _load_json(text: str, source: str) -> Any:
    if not text.strip():
        raise ParseError("empty document", source)
    try:
        return json.loads(text)
    except json.JSONDecodeError as exc:
        raise ParseError(f"invalid JSON: {exc.msg} at line {exc.lineno} column {exc.colno}", source) from None


# --------------------------------------------------------------------------
# algebras

def algebra_from_document(doc: Any, validate: bool = True) -> CoisotropicAlgebra:
    if not isinstance(doc, dict):
        raise ParseError("algebra document must be a JSON object")
    dt = _count(_require(doc, "dim_tot"), "dim_tot")
    dn = _count(_require(doc, "dim_n"), "dim_n")
    name = doc.get("name", "")
    if not isinstance(name, str):
        raise ParseError("name must be a string", "name")
    unit_tot = _vector(_require(doc, "unit_tot"), dt, "unit_tot")
    unit_n = _vector(_require(doc, "unit_n"), dn, "unit_n")
    mu_tot = structure_tensor(dt, _entries(_require(doc, "mu_tot"), dt, 2, "mu_tot"))
    mu_n = structure_tensor(dn, _entries(_require(doc, "mu_n"), dn, 2, "mu_n"))
    rows = _require(doc, "iota")
    if not isinstance(rows, list) or len(rows) != dt:
        raise ParseError(f"iota must have {dt} rows", "iota")
    iota = la.zeros(dt, dn)
    for i, row in enumerate(rows):
        iota[i] = _vector(row, dn, f"iota[{i}]")
    a0 = _require(doc, "a0_basis")
    if not isinstance(a0, list):
        raise ParseError("a0_basis must be a list of vectors", "a0_basis")
    zero = Subspace.span([_vector(v, dn, f"a0_basis[{i}]") for i, v in enumerate(a0)], dn)
    try:
        A = CoisotropicAlgebra(CoisotropicModule(dt, dn, iota, zero), mu_tot, mu_n, unit_tot, unit_n, name)
        if validate:
            validate_algebra(A)
    except CoisoError as exc:
        raise ValidationError(exc) from exc
    return A


def _sparse(t) -> list:
    out = []
    for idx in sorted(zip(*t.nonzero())) if t.size else []:
        out.append([int(i) for i in idx] + [format_scalar(t[idx])])
    return out


def algebra_to_document(A: CoisotropicAlgebra) -> dict:
    return {
        "name": A.name,
        "dim_tot": A.dim_tot,
        "dim_n": A.dim_N,
        "unit_tot": [format_scalar(x) for x in A.unit_tot],
        "unit_n": [format_scalar(x) for x in A.unit_N],
        "mu_tot": _sparse(A.mu_tot),
        "mu_n": _sparse(A.mu_N),
        "iota": [[format_scalar(x) for x in row] for row in A.iota],
        "a0_basis": [[format_scalar(x) for x in v] for v in A.zero_part.vectors],
    }


def _flat(x: Any) -> bool:
    return not isinstance(x, (list, dict))


def _format(doc: Any, indent: int) -> str:
    pad, inner = " " * indent, " " * (indent + 2)
    if isinstance(doc, dict):
        if not doc:
            return "{}"
        items = [f"{inner}{json.dumps(k)}: {_format(v, indent + 2)}" for k, v in doc.items()]
        return "{\n" + ",\n".join(items) + "\n" + pad + "}"
    if isinstance(doc, list):
        if all(_flat(x) for x in doc):
            return json.dumps(doc)
        items = [inner + _format(x, indent + 2) for x in doc]
        return "[\n" + ",\n".join(items) + "\n" + pad + "]"
    return json.dumps(doc)


def dumps(doc: Any) -> str:
    """Stable JSON with scalar lists kept on one line."""
    return _format(doc, 0) + "\n"


def emit_algebra(A: CoisotropicAlgebra) -> str:
    return dumps(algebra_to_document(A))


def bundled_path(name: str) -> Optional[Path]:
    """Path of a bundled fixture by file name, if it exists."""
    p = resources.files("coiso") / "fixtures" / name
    return Path(str(p)) if p.is_file() else None


def resolve_path(path: PathLike) -> Path:
    """``path`` itself, or the bundled fixture of the same file name."""
    p = Path(path)
    if p.is_file():
        return p
    fallback = bundled_path(p.name)
    if fallback is not None:
        return fallback
    raise ParseError(f"no such file: {path}")


def read_document(path: PathLike) -> tuple[Any, Path]:
    p = resolve_path(path)
    try:
        text = p.read_text(encoding="utf-8")
    except OSError as exc:
        raise ParseError(f"cannot read {path}: {exc}") from None
    return _load_json(text, str(path)), p


def parse_algebra(path: PathLike) -> CoisotropicAlgebra:
    doc, _ = read_document(path)
    return algebra_from_document(doc)


# --------------------------------------------------------------------------
# deformations

def deformation_from_document(doc: Any, base_dir: Optional[Path] = None,
                              algebra: Optional[CoisotropicAlgebra] = None):
    """Build a :class:`~coiso.deformation.Deformation`.

    The document's ``algebra`` is a path (relative to ``base_dir``) or an
    inline algebra document; when ``algebra`` is also given the two must agree.
    """
    from .deformation import Deformation
    if not isinstance(doc, dict):
        raise ParseError("deformation document must be a JSON object")
    order = _count(_require(doc, "order"), "order")
    if order > MAX_ORDER:
        raise ParseError(f"order {order} exceeds the supported maximum {MAX_ORDER}", "order")
    ref = doc.get("algebra")
    A = algebra
    if ref is not None:
        if isinstance(ref, str):
            target = Path(ref) if base_dir is None else base_dir / ref
            try:
                doc_alg = parse_algebra(target)
            except ParseError:
                doc_alg = parse_algebra(ref)
        elif isinstance(ref, dict):
            doc_alg = algebra_from_document(ref)
        else:
            raise ParseError("algebra must be a path or an inline document", "algebra")
        if A is not None and not A == doc_alg:
            raise ValidationError(AlgebraMismatch("deformation refers to a different algebra"))
        A = A or doc_alg
    if A is None:
        raise ParseError("no algebra given", "algebra")
    terms = _require(doc, "terms")
    if not isinstance(terms, list):
        raise ParseError("terms must be a list", "terms")
    coeffs = [Cochain.zero(A, 2) for _ in range(order)]
    seen = set()
    for t, term in enumerate(terms):
        at = f"terms[{t}]"
        if not isinstance(term, dict):
            raise ParseError("each term must be an object", at)
        k = _count(_require(term, "order", at), f"{at}.order")
        if not 1 <= k <= order:
            raise ParseError(f"term order {k} outside 1..{order}", f"{at}.order")
        if k in seen:
            raise ParseError(f"duplicate term of order {k}", f"{at}.order")
        seen.add(k)
        coeffs[k - 1] = Cochain.from_entries(
            A, 2,
            _entries(term.get("mu_tot", []), A.dim_tot, 2, f"{at}.mu_tot"),
            _entries(term.get("mu_n", []), A.dim_N, 2, f"{at}.mu_n"))
    try:
        return Deformation.from_terms(A, coeffs, order)
    except CoisoError as exc:
        raise ValidationError(exc) from exc


def deformation_to_document(defm, algebra_ref: Optional[str] = None) -> dict:
    terms = []
    for k in range(1, defm.order + 1):
        c = defm.mu[k]
        if c.is_zero():
            continue
        terms.append({"order": k, "mu_tot": _sparse(c.tot), "mu_n": _sparse(c.N)})
    return {
        "algebra": algebra_ref if algebra_ref is not None else algebra_to_document(defm.A),
        "order": defm.order,
        "terms": terms,
    }


def parse_deformation(path: PathLike, algebra: Optional[CoisotropicAlgebra] = None):
    doc, p = read_document(path)
    return deformation_from_document(doc, p.parent, algebra)
