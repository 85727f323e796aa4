"""Command-line front end.

Every subcommand reads a complex from a JSON file (1-based vertices) and
writes JSON, DOT or plain text.  Exit status is 0 on success, 2 when the
input is rejected and 3 when two redundant computations disagree.
"""
from __future__ import annotations

import argparse
import json
import sys
from typing import Callable, Optional, Sequence

from . import dideals, frobenius, simplicial, weyl
from .errors import OracleDisagreement, SRError
from .face_ring import face_ideal, restrict_to_faces, star_face_ideal
from .simplicial import SimplicialComplex

EXIT_OK = 0
EXIT_INVALID = 2
EXIT_DISAGREE = 3


def _dump(obj) -> str:
    return json.dumps(obj, sort_keys=True, indent=2) + "\n"


def _flag(v: Optional[bool]) -> str:
    return "n/a" if v is None else str(v).lower()


def _int_list(text: str) -> list[int]:
    text = text.strip()
    if not text:
        return []
    try:
        return [int(t) for t in text.split(",")]
    except ValueError:
        raise SRError(f"expected comma-separated integers, got {text!r}") from None


def _face(K: SimplicialComplex, text: str) -> list[int]:
    given = _int_list(text)
    verts = [v - 1 for v in given]
    in_range = all(0 <= v < K.n_vertices for v in verts)
    if not (in_range and simplicial.is_face(K, verts)):
        raise SRError(f"{{{', '.join(map(str, given))}}} is not a face")
    return verts


def _exps(K: SimplicialComplex, text: str, name: str) -> list[int]:
    e = _int_list(text)
    if len(e) != K.n_vertices:
        raise SRError(f"--{name} needs {K.n_vertices} entries, got {len(e)}")
    if any(v < 0 for v in e):
        raise SRError(f"--{name} has a negative entry")
    return e


def _field(char: int) -> weyl.FieldSpec:
    return weyl.QQ if char == 0 else weyl.GF(char)


def _face_list(faces) -> list[list[int]]:
    return sorted((sorted(v + 1 for v in f) for f in faces), key=lambda f: (len(f), f))


def _cmd_stars(K, args):
    P = dideals.poset_of(K)
    if args.format == "dot":
        return simplicial.poset_dot(P)
    nodes = []
    for node in P.nodes:
        nodes.append({
            "index": node.index,
            "label": P.label(node.index),
            "faces": _face_list(node.faces),
            "facets": _face_list(node.star.facets),
            "proper": node.index != P.top,
        })
    covers = [list(c) for c in P.covers()]
    if args.format == "text":
        lines = [f"{n['label']}: faces {n['faces']}" for n in nodes]
        lines += [f"{P.label(i)} < {P.label(j)}" for i, j in covers]
        return "\n".join(lines) + "\n"
    return _dump({"nodes": nodes, "covers": covers})


def _cmd_gens(K, args):
    P = dideals.poset_of(K)
    gens = []
    for i in P.proper:
        node = P.nodes[i]
        gens.append({
            "star": P.label(i),
            "generator": sorted(v + 1 for v in node.representative),
            "faces": _face_list(node.faces),
        })
    if args.format == "text":
        lines = []
        for g in gens:
            mono = "*".join(f"x{v}" for v in g["generator"])
            lines.append(f"{mono}  [{g['star']}]")
        return "\n".join(lines) + "\n"
    return _dump({"generators": gens, "face_ideal": face_ideal(K).vertex_lists()})


def _cmd_lattice(K, args):
    ideals = dideals.enumerate_ideals(K, cap=args.cap)
    if args.format == "dot":
        return dideals.hasse_dot(ideals)
    if args.format == "text":
        return "".join(I.label() + "\n" for I in ideals)
    return _dump({"count": len(ideals), "ideals": [I.to_json() for I in ideals]})


def _cmd_localize(K, args):
    sigma = _face(K, args.face)
    kernel = dideals.localization_kernel(K, sigma)
    I_st = star_face_ideal(K, sigma)
    agree = restrict_to_faces(dideals.contract(kernel), K) == I_st
    out = {
        "face": sorted(v + 1 for v in sigma),
        "generators": I_st.vertex_lists(),
        "kernel": kernel.to_json(),
        "contract_agrees": agree,
    }
    if args.format == "text":
        text = f"kernel of localization at x_{out['face']}: {kernel.label()} (I_st = {I_st})\n"
    else:
        text = _dump(out)
    return text, agree


def _cmd_dstable(K, args):
    found = dideals.d_stable_ideals(K, cap=args.cap)
    via_lattice = {restrict_to_faces(dideals.contract(I), K)
                   for I in dideals.enumerate_ideals(K, cap=args.cap)}
    agree = set(found) == via_lattice
    if args.format == "text":
        text = "".join(str(I) + "\n" for I in found)
    else:
        text = _dump({
            "ideals": [{"unit": False, "generators": I.vertex_lists()} for I in found],
            "count": len(found),
            "agrees_with_lattice": agree,
        })
    return text, agree


def _cmd_member(K, args):
    a = _exps(K, args.a, "a")
    b = _exps(K, args.b, "b")
    F = _field(args.char)
    traves = weyl.in_dR_traves(K, a, b, F)
    oracle = weyl.preserves_face_ideal_oracle(K, a, b, F)
    try:
        star: Optional[bool] = weyl.in_dR_star(K, a, b)
    except SRError:
        star = None
    verdicts = [v for v in (traves, star, oracle) if v is not None]
    agree = len(set(verdicts)) == 1
    if args.format == "text":
        text = (f"in D(R): {_flag(traves)} "
                f"(traves={_flag(traves)}, star={_flag(star)}, oracle={_flag(oracle)})\n")
    else:
        text = _dump({
            "a": a, "b": b, "char": args.char,
            "in_dR": traves, "traves": traves, "star": star, "oracle": oracle,
            "agree": agree,
        })
    return text, agree


def _cmd_hk(K, args):
    poly = frobenius.hk_polynomial(K)
    formula = poly.evaluate(args.q)
    brute = frobenius.hk_bruteforce(K, args.q)
    agree = formula == brute
    if args.format == "text":
        text = (f"HK({args.q}): formula {formula}, brute force {brute}, "
                f"{'agree' if agree else 'DISAGREE'}\n")
    else:
        text = _dump({
            "q": args.q, "formula": formula, "bruteforce": brute, "agree": agree,
            "polynomial": str(poly), "e_hk": poly.e_hk,
        })
    return text, agree


def _cmd_frob(K, args):
    dec = frobenius.multiplicities(K, args.q)
    hk = frobenius.hk_polynomial(K).evaluate(args.q)
    agree = dec.total == hk
    report = dec.to_json()
    if args.format == "text":
        lines = [f"{m['star_face']}: m = {m['m']}" for m in report["multiplicities"]]
        lines.append(f"total {dec.total}, HK({args.q}) = {hk}")
        text = "\n".join(lines) + "\n"
    else:
        report["agree"] = agree
        text = _dump(report)
    return text, agree


def _cmd_matrix(K, args):
    if args.char == 0:
        raise SRError("matrix needs a prime characteristic (--char p)")
    F = _field(args.char)
    elt = weyl.parse(args.op, K.n_vertices, F)
    M = frobenius.operator_matrix(K, elt, args.q)
    if args.format == "text":
        lines = []
        for g in M.generators:
            img = M.image(g)
            lines.append(f"{list(g)} -> " + (", ".join(
                f"{c}*{list(e)}" for e, c in sorted(img.items())) or "0"))
        return "\n".join(lines) + "\n"
    return _dump(M.to_json())


def _cmd_nerve(K, args):
    P = dideals.poset_of(K)
    N = simplicial.nerve_complex(K)
    labels = [P.label(i) for i in P.proper]
    if args.format == "dot":
        return simplicial.complex_dot(N, labels)
    out = simplicial.complex_to_json(N)
    out["labels"] = labels
    if args.format == "text":
        return "".join(
            "{" + ", ".join(labels[v - 1] for v in f) + "}\n" for f in out["facets"])
    return _dump(out)


def _add_common(p: argparse.ArgumentParser, formats: Sequence[str]) -> None:
    p.add_argument("complex", help="JSON file with n_vertices and 1-based facets")
    p.add_argument("--format", choices=list(formats), default="json")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="srdops",
        description="Differential operators on Stanley-Reisner rings.")
    sub = parser.add_subparsers(dest="command", required=True)
    table: dict[str, Callable] = {}

    def add(name, fn, helptext, formats=("json", "text")):
        p = sub.add_parser(name, help=helptext)
        _add_common(p, formats)
        p.set_defaults(handler=fn)
        table[name] = fn
        return p

    add("stars", _cmd_stars, "star poset", ("json", "dot", "text"))
    add("gens", _cmd_gens, "generators x_σ of the proper ideals")
    add("lattice", _cmd_lattice, "all proper two-sided ideals",
        ("json", "dot", "text")).add_argument("--cap", type=int, default=dideals.DEFAULT_CAP)
    add("localize", _cmd_localize, "kernel of localization at x_σ").add_argument(
        "--face", required=True, help="comma-separated 1-based vertices, empty for ∅")
    add("dstable", _cmd_dstable, "D-stable ideals of R").add_argument(
        "--cap", type=int, default=dideals.DEFAULT_CAP)
    p = add("member", _cmd_member, "is x^a ∂^(b) in D(R)?")
    p.add_argument("--a", required=True)
    p.add_argument("--b", required=True)
    p.add_argument("--char", type=int, default=0)
    add("hk", _cmd_hk, "Hilbert-Kunz function").add_argument("--q", type=int, required=True)
    add("frob", _cmd_frob, "Frobenius summand multiplicities").add_argument(
        "--q", type=int, required=True)
    p = add("matrix", _cmd_matrix, "operator as an R^q-linear block matrix")
    p.add_argument("--op", required=True, help="e.g. 'x[1] d[2]^(1) + 2 x[3]'")
    p.add_argument("--q", type=int, required=True)
    p.add_argument("--char", type=int, required=True)
    add("nerve", _cmd_nerve, "order complex of the proper star poset", ("json", "dot", "text"))
    return parser


def run(argv: Optional[Sequence[str]] = None, out=None, err=None) -> int:
    """Execute one command; returns the exit code."""
    out = out or sys.stdout
    err = err or sys.stderr
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_OK if exc.code == 0 else EXIT_INVALID
    try:
        with open(args.complex, encoding="utf-8") as fh:
            K = simplicial.complex_from_json(fh.read())
        if getattr(args, "char", 0) and not weyl._is_prime(args.char):
            raise SRError(f"--char must be 0 or a prime, got {args.char}")
        result = args.handler(K, args)
    except OracleDisagreement as exc:
        err.write(f"srdops: internal disagreement: {exc}\n")
        return EXIT_DISAGREE
    except (SRError, OSError, json.JSONDecodeError) as exc:
        err.write(f"srdops: {exc}\n")
        return EXIT_INVALID
    if isinstance(result, tuple):
        text, agree = result
    else:
        text, agree = result, True
    out.write(text)
    if not agree:
        err.write("srdops: redundant computations disagree\n")
        return EXIT_DISAGREE
    return EXIT_OK


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
