"""JSON documents for every domain object.

Masks are little-endian binary strings (character ``i`` is state ``i``) and
rationals are ``"p/q"`` strings.  Any document may carry a ``"states"`` list
of labels; otherwise labels default to ``s0, s1, ...``.
"""

import json
from fractions import Fraction

from .core import Act, Capacity, Measure, StateSpace, format_rational, mask_to_string, rational, string_to_mask
from .errors import DimensionMismatch, MalformedDocument, MissingEntry
from .implication import ImplicationRelation
from .interpretation import GeneratorForm, Interpretation, from_generators


def dumps(doc):
    """Canonical JSON text: sorted keys, two-space indent, trailing newline."""
    return json.dumps(doc, sort_keys=True, indent=2, ensure_ascii=False) + "\n"


def loads(text):
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise MalformedDocument(f"invalid JSON: {exc.msg} at line {exc.lineno}") from exc
    if not isinstance(doc, dict):
        raise MalformedDocument("top-level JSON value must be an object")
    return doc


def _get(doc, key):
    try:
        return doc[key]
    except (KeyError, TypeError):
        raise MalformedDocument(f"missing key {key!r}") from None


def _space(doc, n=None):
    states = doc.get("states") if isinstance(doc, dict) else None
    if states is None:
        if n is None:
            raise MalformedDocument("cannot infer the number of states")
        return StateSpace.of_size(n)
    if not isinstance(states, list) or not all(isinstance(s, str) for s in states):
        raise MalformedDocument("'states' must be a list of strings")
    space = StateSpace(tuple(states))
    if n is not None and n != space.n:
        raise DimensionMismatch(f"document has {n} states but lists {space.n} labels")
    return space


def _mask(text, n):
    if not isinstance(text, str):
        raise MalformedDocument(f"mask must be a binary string, got {text!r}")
    return string_to_mask(text, n)


def _ratio(x):
    if isinstance(x, float):
        raise MalformedDocument(f"write rationals as strings such as \"1/3\", not {x!r}")
    return rational(x)


def _mask_len(doc, key):
    """Length of the first mask string found under ``key``."""
    value = doc.get(key)
    if isinstance(value, dict) and value:
        return len(next(iter(value)))
    if isinstance(value, list) and value:
        first = value[0]
        if isinstance(first, list) and first:
            first = first[0]
        if isinstance(first, str):
            return len(first)
    return None


# --- encode -------------------------------------------------------------------

def space_doc(space):
    return {"states": list(space.labels)}


def act_doc(f, space=None):
    doc = {"payoffs": [format_rational(x) for x in f.payoffs]}
    if space is not None:
        doc.update(space_doc(space))
    return doc


def measure_doc(mu, space=None):
    doc = {"weights": [format_rational(x) for x in mu.weights]}
    if space is not None:
        doc.update(space_doc(space))
    return doc


def capacity_doc(nu):
    n = nu.n
    return {
        "states": list(nu.space.labels),
        "entries": {mask_to_string(m, n): format_rational(v) for m, v in enumerate(nu.values)},
    }


def interpretation_doc(pi, prefer_generators=False):
    n = pi.n
    doc = space_doc(pi.space)
    g = pi.generators
    if g is not None and (prefer_generators or n > 12):
        doc["generators"] = {
            "base": mask_to_string(g.base, n),
            "singletons": [mask_to_string(c, n) for c in g.singletons],
        }
    else:
        doc["table"] = {mask_to_string(h, n): mask_to_string(p, n) for h, p in enumerate(pi.table)}
    return doc


def relation_doc(rel):
    n = rel.n
    return {
        "states": list(rel.space.labels),
        "pairs": [[mask_to_string(h, n), mask_to_string(g, n)] for h, g in rel.pairs()],
    }


def representation_doc(rep):
    n = rep.pi.n
    return {
        "pi": interpretation_doc(rep.pi),
        "mu": measure_doc(rep.mu, rep.pi.space),
        "algebra": [mask_to_string(m, n) for m in rep.algebra],
        "atoms": [mask_to_string(a, n) for a in rep.atoms],
        "atom_masses": [format_rational(x) for x in rep.atom_masses],
        "identified": list(rep.identified),
        "unique_on_algebra": rep.unique_on_algebra,
    }


def to_jsonable(x, n=None):
    """Witnesses and reports: Fractions to strings, dataclasses to dicts."""
    if isinstance(x, Fraction):
        return format_rational(x)
    if isinstance(x, bool) or x is None or isinstance(x, str):
        return x
    if isinstance(x, int):
        return mask_to_string(x, n) if n is not None else x
    if isinstance(x, dict):
        return {_key(k, n): to_jsonable(v, n) for k, v in x.items()}
    if isinstance(x, (list, tuple)):
        return [to_jsonable(v, n) for v in x]
    if hasattr(x, "as_dict"):
        return to_jsonable(x.as_dict(), n)
    if hasattr(x, "__dataclass_fields__"):
        return {k: to_jsonable(getattr(x, k), n) for k in x.__dataclass_fields__}
    return str(x)


def _key(k, n):
    if isinstance(k, tuple):
        return ",".join(str(i) for i in k)
    if isinstance(k, int) and n is not None:
        return mask_to_string(k, n)
    return str(k)


# --- decode -------------------------------------------------------------------

def parse_act(doc):
    pay = _get(doc, "payoffs")
    if not isinstance(pay, list):
        raise MalformedDocument("'payoffs' must be a list")
    f = Act(tuple(_ratio(x) for x in pay))
    if "states" in doc:
        _space(doc, f.n)
    return f


def parse_measure(doc):
    w = _get(doc, "weights")
    if not isinstance(w, list):
        raise MalformedDocument("'weights' must be a list")
    mu = Measure(tuple(_ratio(x) for x in w))
    if "states" in doc:
        _space(doc, mu.n)
    return mu


def parse_capacity(doc, snap=None):
    """``entries`` maps mask strings to values; ``values`` is the dense alternative."""
    if "entries" in doc:
        entries = doc["entries"]
        if not isinstance(entries, dict) or not entries:
            raise MalformedDocument("'entries' must be a non-empty object")
        n = len(next(iter(entries)))
        table = {}
        for key, val in entries.items():
            table[_mask(key, n)] = _snap(_ratio(val), snap)
        size = 1 << n
        missing = [m for m in range(size) if m not in table]
        if missing:
            raise MissingEntry(f"no capacity value for {mask_to_string(missing[0], n)}",
                               witness=missing[0])
        values = [table[m] for m in range(size)]
    else:
        raw = _get(doc, "values")
        if not isinstance(raw, list):
            raise MalformedDocument("'values' must be a list")
        values = [_snap(_ratio(x), snap) for x in raw]
        n = max(len(values).bit_length() - 1, 0)
        if len(values) != 1 << n:
            raise DimensionMismatch(f"capacity table length {len(values)} is not 2^n")
    return Capacity(tuple(values), _space(doc, n))


def _snap(x, denom):
    return x if denom is None else x.limit_denominator(denom)


def parse_interpretation(doc):
    if "generators" in doc:
        g = doc["generators"]
        single = _get(g, "singletons")
        if not isinstance(single, list) or not single:
            raise MalformedDocument("'singletons' must be a non-empty list")
        n = len(single)
        space = _space(doc, n)
        gf = GeneratorForm(_mask(_get(g, "base"), n), tuple(_mask(c, n) for c in single))
        return from_generators(gf, space)
    table = _get(doc, "table")
    if isinstance(table, dict):
        if not table:
            raise MalformedDocument("'table' is empty")
        n = len(next(iter(table)))
        out = {}
        for key, val in table.items():
            out[_mask(key, n)] = _mask(val, n)
        missing = [h for h in range(1 << n) if h not in out]
        if missing:
            raise DimensionMismatch(f"table has no entry for {mask_to_string(missing[0], n)}")
        rows = [out[h] for h in range(1 << n)]
    elif isinstance(table, list) and table:
        n = len(table[0])
        rows = [_mask(x, n) for x in table]
        if len(rows) != 1 << n:
            raise DimensionMismatch(f"table has {len(rows)} entries, expected {1 << n}")
    else:
        raise MalformedDocument("'table' must be an object or a list of masks")
    return Interpretation(_space(doc, n), table=rows)


def parse_relation(doc):
    pairs = _get(doc, "pairs")
    if not isinstance(pairs, list):
        raise MalformedDocument("'pairs' must be a list")
    if "states" in doc:
        n = len(doc["states"])
    else:
        n = _mask_len(doc, "pairs")
        if n is None:
            raise MalformedDocument("cannot infer the number of states of an empty relation")
    out = []
    for p in pairs:
        if not isinstance(p, list) or len(p) != 2:
            raise MalformedDocument("each pair must be a two-element list")
        out.append((_mask(p[0], n), _mask(p[1], n)))
    return ImplicationRelation.from_pairs(_space(doc, n), out)


def parse_constraints(doc):
    cons = _get(doc, "constraints")
    if not isinstance(cons, dict) or not cons:
        raise MalformedDocument("'constraints' must be a non-empty object")
    n = len(next(iter(cons)))
    space = _space(doc, n)
    return {_mask(h, n): _mask(s, n) for h, s in cons.items()}, space


def parse_representation(doc):
    pi = parse_interpretation(_get(doc, "pi"))
    mu = parse_measure(_get(doc, "mu"))
    if mu.n != pi.n:
        raise DimensionMismatch("representation measure and map disagree on n")
    return pi, mu


def parse_mask_arg(text, space):
    """A command-line mask: a binary string, or state labels separated by commas.

    Use semicolons instead when the labels themselves contain commas.
    """
    if text and set(text) <= {"0", "1"}:
        return string_to_mask(text, space.n)
    sep = ";" if ";" in text else ","
    return space.mask([s.strip() for s in text.split(sep) if s.strip()])
