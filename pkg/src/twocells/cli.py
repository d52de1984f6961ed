"""Command line front end: ``twocells VERB INPUT.json [-o OUT]``.

Exit codes: 0 success, 1 error (schema, precondition or failed validation),
2 when the result is zero or empty.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import random
import sys
from collections import Counter

import jsonschema

from . import greenms, kmcalc
from .cartan import CartanDatum, CartanError, Weight
from .greenms import Multisemigroup
from .laurent import LaurentPoly
from .projbicat import (
    CAX,
    AlgebraFamily,
    Proj,
    cell_ideal,
    cell_rep_hom_dim,
    duflo,
    graded_hom_dim,
    lcell_members,
    m_multiplicity,
)

EXIT_OK, EXIT_ERROR, EXIT_EMPTY = 0, 1, 2

# -- schemas ---------------------------------------------------------------------------

_INT_LIST = {"type": "array", "items": {"type": "integer"}}

MULTISEMIGROUP_SCHEMA = {
    "type": "object",
    "required": ["elements", "table"],
    "properties": {
        "elements": {"type": "array", "items": {"type": "string"}, "minItems": 1},
        "table": {
            "type": "object",
            "propertyNames": {"pattern": "^[^,]+,[^,]+$"},
            "additionalProperties": {"type": "array", "items": {"type": "string"}},
        },
    },
}

_ALGEBRA_SCHEMA = {
    "type": "object",
    "required": ["basis", "mul", "idempotents"],
    "properties": {
        "dim": {"type": "integer", "minimum": 1},
        "name": {"type": "string"},
        "basis": {"type": "array", "items": {"type": "string"}, "minItems": 1},
        "mul": {
            "type": "object",
            "propertyNames": {"pattern": "^[^,]+,[^,]+$"},
            "additionalProperties": {
                "type": "object",
                "additionalProperties": {"type": ["integer", "string"]},
            },
        },
        "idempotents": {"type": "array", "minItems": 1, "items": {"type": "array", "items": {"type": "string"}}},
        "degrees": {"type": "array", "items": _INT_LIST},
    },
}

FAMILY_SCHEMA = {
    "type": "object",
    "required": ["algebras"],
    "properties": {
        "algebras": {"type": "array", "minItems": 1, "items": _ALGEBRA_SCHEMA},
        "x_subspaces": {"type": "array"},
        "lcell": {"type": "array", "items": {"type": "integer", "minimum": 1}, "minItems": 2, "maxItems": 2},
    },
}

_WEIGHT_SCHEMA = {
    "type": "object",
    "required": ["lambda"],
    "properties": {"lambda": _INT_LIST, "beta": _INT_LIST},
}

_GEN_SCHEMA = {
    "type": "array",
    "minItems": 2,
    "maxItems": 3,
    "prefixItems": [{"enum": ["E", "F", "e", "f"]}, {"type": "integer"}, {"type": "integer"}],
}

QUERY_SCHEMA = {
    "type": "object",
    "required": ["cartan", "highest_weights"],
    "properties": {
        "cartan": {
            "type": "object",
            "required": ["gcm"],
            "properties": {
                "rank": {"type": "integer"},
                "gcm": {"type": "array", "items": _INT_LIST},
                "symmetrizers": _INT_LIST,
            },
        },
        "highest_weights": {"type": "array", "minItems": 1, "items": _WEIGHT_SCHEMA},
        "support_oracle": {"type": "array"},
        "word": {
            "type": "object",
            "required": ["source_beta", "gens"],
            "properties": {
                "source_beta": _INT_LIST,
                "source_index": {"type": "integer", "minimum": 1},
                "gens": {"type": "array", "items": _GEN_SCHEMA},
                "shift": {"type": "integer"},
            },
        },
        "src_beta": _INT_LIST,
        "src_index": {"type": "integer", "minimum": 1},
        "tgt_beta": _INT_LIST,
        "tgt_index": {"type": "integer", "minimum": 1},
    },
}


class CommandError(Exception):
    pass


def _json_path(error: jsonschema.ValidationError) -> str:
    path = "$"
    for part in error.absolute_path:
        path += f"[{part}]" if isinstance(part, int) else f".{part}"
    return path


def check_schema(data, schema):
    validator = jsonschema.Draft202012Validator(schema)
    errors = sorted(validator.iter_errors(data), key=lambda e: list(map(str, e.absolute_path)))
    if errors:
        e = errors[0]
        raise CommandError(f"schema error at {_json_path(e)}: {e.message}")


# -- loading -----------------------------------------------------------------------


def _load(path: str):
    try:
        with open(path, encoding="utf-8") as fh:
            return json.load(fh)
    except json.JSONDecodeError as exc:
        raise CommandError(f"{path}: invalid JSON ({exc})") from None
    except OSError as exc:
        raise CommandError(f"{path}: {exc.strerror}") from None


def _is_family(data) -> bool:
    return isinstance(data, dict) and "algebras" in data


def _family(data) -> AlgebraFamily:
    check_schema(data, FAMILY_SCHEMA)
    return AlgebraFamily.from_json(data)


def _multisemigroup(data) -> Multisemigroup:
    check_schema(data, MULTISEMIGROUP_SCHEMA)
    return Multisemigroup.from_json(data)


def _green_input(data):
    """(multisemigroup, family or None) from either kind of input."""
    if _is_family(data):
        fam = _family(data)
        cax = CAX(fam)
        return cax.multisemigroup, fam
    ms = _multisemigroup(data)
    v = greenms.validate(ms)
    if not v:
        raise CommandError(v.describe(ms))
    return ms, None


def _support(data):
    check_schema(data, QUERY_SCHEMA)
    datum = CartanDatum.from_json(data["cartan"])
    oracles = data.get("support_oracle")
    return kmcalc.Support.from_json(datum, data["highest_weights"], oracles)


def _object(support, beta, index):
    return kmcalc.truncated_object(support, beta, index)


def _word(support, data, canonical_shift=False) -> kmcalc.Word:
    if "word" not in data:
        raise CommandError("schema error at $: 'word' is a required property")
    w = data["word"]
    src = _object(support, w["source_beta"], w.get("source_index", 1))
    return kmcalc.make_word(support, src, w["gens"], w.get("shift", 0), canonical_shift)


# -- verbs -------------------------------------------------------------------------------


def cmd_validate(data, args):
    if _is_family(data):
        fam = _family(data)
        checks = fam.validate()
        ok = all(c.ok for cs in checks.values() for c in cs)
        report = {
            "kind": "family",
            "valid": ok,
            "algebras": {
                name: [{"check": c.name, "ok": c.ok, "detail": c.detail} for c in cs] for name, cs in checks.items()
            },
        }
        return report, EXIT_OK if ok else EXIT_ERROR
    ms = _multisemigroup(data)
    v = greenms.validate(ms)
    report = {"kind": "multisemigroup", "valid": bool(v)}
    if not v:
        x, y, z = v.triple
        report["violating_triple"] = [ms.elements[x], ms.elements[y], ms.elements[z]]
        report["detail"] = v.describe(ms)
    return report, EXIT_OK if v else EXIT_ERROR


def cmd_cells(data, args):
    ms, fam = _green_input(data)
    gs = greenms.green_cells(ms)
    return greenms.report(ms, gs), EXIT_OK


def cmd_eggbox(data, args):
    ms, _ = _green_input(data)
    gs = greenms.green_cells(ms)
    if args.format == "csv":
        return greenms.eggbox_csv(ms, gs), EXIT_OK
    return greenms.eggbox_dot(ms, gs), EXIT_OK


def _lcells(fam: AlgebraFamily, data):
    if "lcell" in data:
        i, k = (v - 1 for v in data["lcell"])
        return [(i, k)]
    return [(i, k) for i, alg in enumerate(fam.algebras) for k in range(alg.n_idempotents)]


def _dim_text(value) -> str:
    if isinstance(value, LaurentPoly):
        return str(value)
    if isinstance(value, Counter):
        return ";".join(f"{list(d)}:{c}" for d, c in sorted(value.items()))
    return str(value)


def _table_out(rows, args, value_name):
    if args.format == "csv":
        buf = io.StringIO()
        writer = csv.writer(buf, lineterminator="\n")
        writer.writerow(["lcell", "src", "tgt", value_name])
        for row in rows:
            writer.writerow([row["lcell"], row["src"], row["tgt"], row[value_name]])
        return buf.getvalue()
    return {"rows": rows}


def cmd_cellrep(data, args):
    fam = _family(data)
    fam.require_valid()
    rows = []
    for src in _lcells(fam, data):
        ideal = cell_ideal(fam, src)
        members = lcell_members(fam, src)
        label = str(members[0]).split("_")[0]
        for F in members:
            for G in members:
                if F.tgt_obj != G.tgt_obj:
                    continue
                row = {
                    "lcell": label,
                    "src": str(F),
                    "tgt": str(G),
                    "dim": cell_rep_hom_dim(fam, src, F, G),
                    "ideal_dim": ideal.dim(F, G),
                }
                if fam.graded:
                    row["laurent"] = _dim_text(cell_rep_hom_dim(fam, src, F, G, graded=True))
                rows.append(row)
    return _table_out(rows, args, "laurent" if fam.graded and args.graded else "dim"), EXIT_OK


def cmd_duflo(data, args):
    fam = _family(data)
    cax = CAX(fam)
    out = []
    for src in _lcells(fam, data):
        members = lcell_members(fam, src)
        out.append({"lcell": [str(F) for F in members], "duflo": str(duflo(fam, cax.green, members))})
    return {"duflo": out}, EXIT_OK


def cmd_mmult(data, args):
    fam = _family(data)
    cax = CAX(fam)
    rcells = []
    for cell in cax.green.cells_R:
        members = cax.cell_members(cell)
        if not isinstance(members[0], Proj):
            continue
        values = {str(F): m_multiplicity(fam, F) for F in members}
        rcells.append({"rcell": sorted(values), "m": values, "constant": len(set(values.values())) == 1})
    return {"rcells": rcells, "m_constant_on_rcells": all(r["constant"] for r in rcells)}, EXIT_OK


def cmd_gradedhom(data, args):
    fam = _family(data)
    fam.require_valid()
    if not fam.graded:
        raise CommandError("gradedhom needs degrees on every algebra")
    cax = CAX(fam)
    rows = []
    projs = [F for F in cax.elements if isinstance(F, Proj)]
    for F in projs:
        for G in projs:
            if F.src_obj != G.src_obj or F.tgt_obj != G.tgt_obj:
                continue
            rows.append({"lcell": "", "src": str(F), "tgt": str(G), "laurent": _dim_text(graded_hom_dim(fam, F, G))})
    return _table_out(rows, args, "laurent"), EXIT_OK


def cmd_normalform(data, args):
    support = _support(data)
    word = _word(support, data, args.canonical_shift)
    rng = random.Random(args.seed)
    nf = kmcalc.normal_form(word, args.strategy, rng, check_positivity=not args.allow_negative)
    out = kmcalc.normal_form_json(nf)
    out["input"] = str(word)
    return out, EXIT_EMPTY if nf.is_zero() else EXIT_OK


def cmd_adjoint(data, args):
    support = _support(data)
    word = _word(support, data, args.canonical_shift)
    if word.is_zero:
        return {"zero": True, "input": str(word)}, EXIT_EMPTY
    adj = kmcalc.adjoint(word)
    return {"zero": False, "input": str(word), "adjoint": adj.to_json(), "text": str(adj)}, EXIT_OK


def cmd_enumerate(data, args):
    support = _support(data)
    for key in ("src_beta", "tgt_beta"):
        if key not in data:
            raise CommandError(f"schema error at $: '{key}' is a required property")
    src = _object(support, data["src_beta"], data.get("src_index", 1))
    tgt = _object(support, data["tgt_beta"], data.get("tgt_index", 1))
    words = kmcalc.enumerate_spanning(support, src, tgt)
    out = {
        "count": len(words),
        "words": [{"f_part": list(w.f_part), "e_part": list(w.e_part), "text": str(w)} for w in words],
        "note": "spanning 1-morphisms, not indecomposables",
    }
    return out, EXIT_OK if words else EXIT_EMPTY


def _matrix_json(m):
    return [[str(x) for x in row] for row in m]


def cmd_oracle(data, args):
    support = _support(data)
    if support.rank != 1 or len(support.highest) != 1:
        raise CommandError("oracle needs a rank-one datum with a single highest weight")
    word = _word(support, data, args.canonical_shift)
    n = support.highest[0].lam[0]
    direct = kmcalc.sl2_oracle(n, word)
    nf = kmcalc.normal_form(word, args.strategy, random.Random(args.seed), check_positivity=False)
    via = kmcalc.decategorify(support, n, nf)
    return {"n": n, "word": str(word), "matrix": _matrix_json(direct), "agrees_with_normal_form": direct == via}, (
        EXIT_OK
    )


VERBS = {
    "validate": cmd_validate,
    "cells": cmd_cells,
    "eggbox": cmd_eggbox,
    "cellrep": cmd_cellrep,
    "duflo": cmd_duflo,
    "mmult": cmd_mmult,
    "normalform": cmd_normalform,
    "adjoint": cmd_adjoint,
    "enumerate": cmd_enumerate,
    "oracle": cmd_oracle,
    "gradedhom": cmd_gradedhom,
}


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="twocells", description=__doc__.splitlines()[0])
    p.add_argument("verb", choices=sorted(VERBS))
    p.add_argument("input", help="JSON input file")
    p.add_argument("-o", "--output", help="write the report here instead of stdout")
    p.add_argument("--seed", type=int, default=0, help="seed for randomized choices")
    p.add_argument("--strategy", choices=kmcalc.STRATEGIES, default="leftmost")
    p.add_argument("--canonical-shift", action="store_true", help="apply [[1 - <h_i, lambda>]] to every E_i")
    p.add_argument("--allow-negative", action="store_true", help="skip the final positivity check")
    p.add_argument("--format", choices=("json", "dot", "csv"), default=None)
    p.add_argument("--graded", action="store_true", help="cellrep CSV: print Laurent polynomials")
    return p


def _render(report) -> str:
    if isinstance(report, str):
        return report
    return json.dumps(report, indent=2, sort_keys=False) + "\n"


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    if args.format is None:
        args.format = "dot" if args.verb == "eggbox" else "json"
    try:
        data = _load(args.input)
        report, code = VERBS[args.verb](data, args)
    except CommandError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_ERROR
    except kmcalc.NegativeMultiplicity as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_ERROR
    except (ValueError, KeyError, IndexError, CartanError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_ERROR
    text = _render(report)
    if args.output:
        with open(args.output, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)
    return code


if __name__ == "__main__":
    sys.exit(main())
