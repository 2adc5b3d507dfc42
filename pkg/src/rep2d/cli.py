"""Command-line front end: generators, measures, grammars, schemes, and the
experiment harness that tabulates the separations between them."""

from __future__ import annotations

import argparse
import csv
import math
import sys

from . import attractor as att
from . import complexity as cx
from . import grammar as gr
from . import macro as mc
from . import grid as gd


def _read_text(path: str) -> str:
    if path == "-":
        return sys.stdin.read()
    with open(path) as f:
        return f.read()


def _write_text(path: str | None, text: str):
    if path is None or path == "-":
        sys.stdout.write(text)
    else:
        with open(path, "w") as f:
            f.write(text)


def _read_grid(path: str) -> gd.Grid2D:
    return gd.parse_grid(_read_text(path))


def _csv(rows: list[dict], header: list[str], out: str | None):
    import io

    buf = io.StringIO()
    w = csv.DictWriter(buf, fieldnames=header, lineterminator="\n")
    w.writeheader()
    for r in rows:
        w.writerow(r)
    _write_text(out, buf.getvalue())


# ---------------------------------------------------------------------------
# Subcommand handlers


def cmd_gen(a):
    fam = a.family
    if fam == "identity":
        g = gd.gen_identity(int(a.params[0]))
    elif fam == "cm":
        g = gd.gen_cm_lemma4(int(a.params[0]))
    elif fam == "bordered-identity":
        g = gd.gen_bordered_identity(int(a.params[0]), gd.BorderOrder(a.order))
    elif fam == "ak":
        g = gd.gen_ak(int(a.params[0]))
    elif fam == "zeros":
        g = gd.new_grid(int(a.params[0]), int(a.params[1]),
                        "0" * (int(a.params[0]) * int(a.params[1])))
    else:
        raise gd.GridError(f"unknown family {fam!r}")
    _write_text(a.out, gd.serialize_grid(g))


def _measure_rows(name: str, g_m: int, g_n: int, r: cx.Ratio) -> list[dict]:
    return [{
        "family": "-", "m": g_m, "n": g_n, "measure": name,
        "value_num": r.num, "value_den": r.den,
        "witness_k1": r.k1, "witness_k2": r.k2,
    }]


_MEASURE_HEADER = ["family", "m", "n", "measure", "value_num", "value_den",
                   "witness_k1", "witness_k2"]


def cmd_delta(a):
    g = _read_grid(a.input)
    r = cx.delta2d(g, mode=a.mode, kmax1=a.kmax1, kmax2=a.kmax2)
    _csv(_measure_rows("delta2d", g.m, g.n, r), _MEASURE_HEADER, a.out)


def cmd_delta_square(a):
    g = _read_grid(a.input)
    r = cx.delta_square(g, mode=a.mode)
    _csv(_measure_rows("delta_square", g.m, g.n, r), _MEASURE_HEADER, a.out)


def cmd_delta1d(a):
    text = _read_text(a.input)
    if a.rlin:
        s = gd.rlin(gd.parse_grid(text))
    else:
        lines = [ln for ln in text.splitlines() if ln]
        if len(lines) != 1:
            raise gd.GridError("expected a single-line string (or pass --rlin)")
        s = lines[0]
    r = cx.delta_1d(s)
    _csv(_measure_rows("delta_1d", 1, len(s), r), _MEASURE_HEADER, a.out)


def _read_attractor(path: str) -> att.AttractorSet:
    pairs = []
    for ln in _read_text(path).splitlines():
        ln = ln.strip()
        if not ln:
            continue
        i, j = ln.split()
        pairs.append((int(i), int(j)))
    return att.AttractorSet.of(pairs)


_GAMMA_HEADER = ["mode", "size", "valid", "witness"]


def cmd_gamma_verify(a):
    g = _read_grid(a.input)
    gamma = _read_attractor(a.attractor)
    rep = att.is_attractor(g, gamma, mode=a.mode)
    wit = "" if rep.covered else f"{rep.witness[0]}x{rep.witness[1]}:{rep.witness[2]}"
    _csv([{"mode": a.mode, "size": len(gamma), "valid": rep.covered,
           "witness": wit}], _GAMMA_HEADER, a.out)
    if not rep.covered:
        return 1
    return 0


def cmd_gamma_min(a):
    g = _read_grid(a.input)
    gamma = att.min_attractor_exact(g, mode=a.mode, cap=a.cap)
    _csv([{"mode": a.mode, "size": len(gamma), "valid": True,
           "witness": ";".join(f"{i} {j}" for i, j in gamma.sorted())}],
         _GAMMA_HEADER, a.out)


def cmd_gamma_greedy(a):
    g = _read_grid(a.input)
    gamma = att.greedy_attractor(g, mode=a.mode)
    _csv([{"mode": a.mode, "size": len(gamma), "valid": True,
           "witness": ";".join(f"{i} {j}" for i, j in gamma.sorted())}],
         _GAMMA_HEADER, a.out)


def _read_slp(path: str) -> gr.Slp2D:
    return gr.from_json(_read_text(path))


def cmd_slp_validate(a):
    g = _read_slp(a.input)
    st = g.validate()
    print(f"valid size={st.size} height={st.height} dims={st.m}x{st.n}")


def cmd_slp_stats(a):
    g = _read_slp(a.input)
    st = g.validate()
    _csv([{"size": st.size, "height": st.height, "m": st.m, "n": st.n}],
         ["size", "height", "m", "n"], a.out)


def cmd_slp_expand(a):
    g = _read_slp(a.input)
    _write_text(a.out, gd.serialize_grid(gr.expand(g)))


def cmd_slp_access(a):
    g = _read_slp(a.input)
    print(gr.access(g, a.i, a.j))


def cmd_slp_build(a):
    if a.kind == "quadtree":
        g = gr.build_quadtree_slp(_read_grid(a.input))
    elif a.kind == "family":
        fam = a.params[0]
        if fam == "bordered-identity":
            g = gr.slp_bordered_identity(int(a.params[1]))
        elif fam == "ak":
            g = gr.slp_ak(int(a.params[1]))
        elif fam == "zeros":
            g = gr.rlslp_zeros(int(a.params[1]), int(a.params[2]))
        else:
            raise gr.GrammarError(f"unknown grammar family {fam!r}")
    else:
        raise gr.GrammarError(f"unknown build kind {a.kind!r}")
    _write_text(a.out, gr.to_json(g) + "\n")


def _read_scheme(path: str) -> mc.MacroScheme2D:
    return mc.from_json(_read_text(path))


def cmd_macro_validate(a):
    s = _read_scheme(a.input)
    mc.validate_scheme(s)
    print(f"valid size={s.size} dims={s.m}x{s.n}")


def cmd_macro_decode(a):
    s = _read_scheme(a.input)
    mc.validate_scheme(s)
    _write_text(a.out, gd.serialize_grid(mc.decode(s)))


def cmd_macro_build(a):
    g = _read_grid(a.input)
    if a.family == "identity":
        if g.m != g.n or g != gd.gen_identity(g.n):
            raise mc.SchemeError("input grid is not an identity matrix")
        s = mc.scheme_identity(g.n)
    elif a.family == "ak":
        # infer k from the dims m = 2k(k-1), n = k(k+2)
        k = round((1 + math.sqrt(1 + 2 * g.m)) / 2)
        if g != gd.gen_ak(k):
            raise mc.SchemeError("input grid is not a member of the ak family")
        s = mc.scheme_ak(k)
    else:
        raise mc.SchemeError(f"unknown scheme family {a.family!r}")
    _write_text(a.out, mc.to_json(s) + "\n")


def cmd_macro_from_slp(a):
    g = _read_slp(a.input)
    s = mc.rlslp_to_macro(g)
    _write_text(a.out, mc.to_json(s) + "\n")


def cmd_macro_min(a):
    g = _read_grid(a.input)
    s = mc.min_scheme_exact(g, cap=a.cap)
    _write_text(a.out, mc.to_json(s) + "\n")


# ---------------------------------------------------------------------------
# Experiments

_EXP_HEADER = ["family", "params", "N", "measure", "value_num", "value_den",
               "value", "notes"]


def _row(family, params, big_n, measure, num, den=1, notes=""):
    return {"family": family, "params": params, "N": big_n, "measure": measure,
            "value_num": num, "value_den": den,
            "value": f"{num / den:.6g}", "notes": notes}


def exp_identity_gamma() -> list[dict]:
    rows = []
    for m in (3, 4):
        g = gd.gen_identity(m)
        gamma = att.min_attractor_exact(g)
        rows.append(_row("identity", m, m * m, "gamma_exact", len(gamma),
                         notes="exhaustive minimum; equals m+1"))
    for m in range(5, 33):
        g = gd.gen_identity(m)
        wit = att.AttractorSet.of([(i, i) for i in range(1, m + 1)] + [(1, m)])
        ok = att.is_attractor(g, wit).covered
        rows.append(_row("identity", m, m * m, "gamma_upper_witness", len(wit),
                         notes=f"diagonal plus corner; valid={ok}"))
        sq = att.AttractorSet.of([(m, 1), (m // 2, m // 2)])
        ok2 = att.is_attractor(g, sq, mode="square").covered
        rows.append(_row("identity", m, m * m, "gamma_square_witness", len(sq),
                         notes=f"two cells; valid={ok2}"))
        b = mc.scheme_identity(m).size
        rows.append(_row("identity", m, m * m, "b_upper", b,
                         notes=f"gamma/b={(m + 1) / b:.3f}; grows like sqrt(N)/6"))
    return rows


def exp_ak_separation() -> list[dict]:
    rows = []
    for k in range(4, 11):
        g = gd.gen_ak(k)
        big_n = g.size
        s = mc.scheme_ak(k)
        mc.validate_scheme(s)
        assert mc.decode(s) == g
        b = s.size
        rows.append(_row("ak", k, big_n, "b_upper", b, notes="4(k+1) phrases"))
        dsq = cx.delta_square(g)
        rows.append(_row("ak", k, big_n, "delta_square", dsq.num, dsq.den,
                         notes=f"witness k={dsq.k1}; dsq/(b*k)="
                               f"{dsq.num / (dsq.den * b * k):.4f}"))
    return rows


def exp_rlin_blowup() -> list[dict]:
    rows = []
    for n in (8, 16, 32, 64):
        g = gd.gen_bordered_identity(n, gd.BorderOrder.ROWS_FIRST)
        d2 = cx.delta2d(g)
        rows.append(_row("bordered-identity", n, g.size, "delta2d", d2.num, d2.den,
                         notes="bounded by 6"))
        d1 = cx.delta_1d(gd.rlin(g))
        rows.append(_row("bordered-identity", n, g.size, "delta_1d_rlin",
                         d1.num, d1.den,
                         notes=f"lower bound (n-3)/2={(n - 3) / 2:.1f}"))
    for n in (16, 64, 256):
        s = gd.rlin(gd.gen_identity(n))
        ok = att.is_attractor_1d(s, [1, 2, n + 1])
        rows.append(_row("identity", n, n * n, "gamma1d_rlin_witness", 3,
                         notes=f"positions 1,2,n+1; valid={ok}"))
    return rows


def exp_cm_family() -> list[dict]:
    rows = []
    for n in (16, 36, 64, 100):
        g = gd.gen_cm_lemma4(n)
        dsq = cx.delta_square(g)
        rows.append(_row("cm", n, g.size, "delta_square", dsq.num, dsq.den,
                         notes="constant across n"))
        d2 = cx.delta2d(g)
        root = math.isqrt(n)
        rows.append(_row("cm", n, g.size, "delta2d", d2.num, d2.den,
                         notes=f"delta/sqrt(n)={d2.num / (d2.den * root):.4f}"))
    return rows


_EXPERIMENTS = {
    "identity-gamma": exp_identity_gamma,
    "ak-separation": exp_ak_separation,
    "rlin-blowup": exp_rlin_blowup,
    "cm-family": exp_cm_family,
}


def cmd_experiment(a):
    fn = _EXPERIMENTS.get(a.name)
    if fn is None:
        raise gd.GridError(f"unknown experiment {a.name!r}; "
                           f"choose from {sorted(_EXPERIMENTS)}")
    _csv(fn(), _EXP_HEADER, a.out)


# ---------------------------------------------------------------------------
# Argument parsing


def _add_io(p, grid_input=True):
    if grid_input:
        p.add_argument("input", nargs="?", default="-",
                       help="input file ('-' for stdin)")
    p.add_argument("--out", default=None, help="output file (default stdout)")


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="rep2d",
                                description="2D string repetitiveness toolkit")
    sub = p.add_subparsers(dest="cmd", required=True)

    s = sub.add_parser("gen", help="generate a family instance")
    s.add_argument("family",
                   choices=["identity", "cm", "bordered-identity", "ak", "zeros"])
    s.add_argument("params", nargs="+")
    s.add_argument("--order", default="rows_first",
                   choices=["rows_first", "cols_first"])
    s.add_argument("--out", default=None)
    s.set_defaults(fn=cmd_gen)

    for name, fn in (("delta", cmd_delta), ("delta-square", cmd_delta_square)):
        s = sub.add_parser(name, help=f"compute {name} of a grid")
        _add_io(s)
        s.add_argument("--mode", default="fingerprint",
                       choices=["exact", "fingerprint"])
        if name == "delta":
            s.add_argument("--kmax1", type=int, default=None)
            s.add_argument("--kmax2", type=int, default=None)
        s.set_defaults(fn=fn)

    s = sub.add_parser("delta1d", help="1D delta of a string")
    _add_io(s)
    s.add_argument("--rlin", action="store_true",
                   help="linearize a grid input row by row first")
    s.set_defaults(fn=cmd_delta1d)

    s = sub.add_parser("gamma-verify", help="check an attractor candidate")
    _add_io(s)
    s.add_argument("--mode", default="rect", choices=["rect", "square"])
    s.add_argument("--attractor", required=True,
                   help="file with one 'i j' pair per line")
    s.set_defaults(fn=cmd_gamma_verify)

    s = sub.add_parser("gamma-min", help="exact minimum attractor (tiny grids)")
    _add_io(s)
    s.add_argument("--mode", default="rect", choices=["rect", "square"])
    s.add_argument("--cap", type=int, default=20)
    s.set_defaults(fn=cmd_gamma_min)

    s = sub.add_parser("gamma-greedy", help="greedy attractor upper bound")
    _add_io(s)
    s.add_argument("--mode", default="rect", choices=["rect", "square"])
    s.set_defaults(fn=cmd_gamma_greedy)

    s = sub.add_parser("slp-validate", help="validate a grammar file")
    _add_io(s)
    s.set_defaults(fn=cmd_slp_validate)

    s = sub.add_parser("slp-stats", help="grammar size/height/dims")
    _add_io(s)
    s.set_defaults(fn=cmd_slp_stats)

    s = sub.add_parser("slp-expand", help="expand a grammar to a grid")
    _add_io(s)
    s.set_defaults(fn=cmd_slp_expand)

    s = sub.add_parser("slp-access", help="one-cell access without expansion")
    s.add_argument("i", type=int)
    s.add_argument("j", type=int)
    _add_io(s)
    s.set_defaults(fn=cmd_slp_access)

    s = sub.add_parser("slp-build", help="build a grammar")
    s.add_argument("kind", choices=["quadtree", "family"])
    s.add_argument("params", nargs="*")
    s.add_argument("input", nargs="?", default="-")
    s.add_argument("--out", default=None)
    s.set_defaults(fn=cmd_slp_build)

    s = sub.add_parser("macro-validate", help="validate a scheme file")
    _add_io(s)
    s.set_defaults(fn=cmd_macro_validate)

    s = sub.add_parser("macro-decode", help="decode a scheme to a grid")
    _add_io(s)
    s.set_defaults(fn=cmd_macro_decode)

    s = sub.add_parser("macro-build", help="handcrafted scheme for a family grid")
    s.add_argument("family", choices=["identity", "ak"])
    _add_io(s)
    s.set_defaults(fn=cmd_macro_build)

    s = sub.add_parser("macro-from-slp", help="convert a grammar to a scheme")
    _add_io(s)
    s.set_defaults(fn=cmd_macro_from_slp)

    s = sub.add_parser("macro-min", help="exact minimum scheme (tiny grids)")
    _add_io(s)
    s.add_argument("--cap", type=int, default=9)
    s.set_defaults(fn=cmd_macro_min)

    s = sub.add_parser("experiment", help="run a measurement campaign")
    s.add_argument("name")
    s.add_argument("--seed", type=int, default=0)
    s.add_argument("--out", default=None)
    s.set_defaults(fn=cmd_experiment)

    return p


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        code = args.fn(args)
    except (gd.GridError, gr.GrammarError, mc.SchemeError, ValueError) as e:
        kind = type(e).__name__
        print(f"error: {kind}: {e}", file=sys.stderr)
        return 1
    return code or 0


if __name__ == "__main__":
    sys.exit(main())
