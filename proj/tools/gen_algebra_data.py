#!/usr/bin/env python3
"""Regenerate data/algebras/*.json from minimal polynomials.

Each algebra is K = F(t) with F in {Q, Q(i), Q(w3)}, integral basis 1, t, ..., t^(n-1),
and sigma given as a polynomial in t.  Requires sympy.
"""
import json
import pathlib

import sympy as sp

x = sp.symbols("x")
OUT = pathlib.Path(__file__).resolve().parent.parent / "data" / "algebras"


def coords(poly, minpoly, n):
    r = sp.Poly(sp.rem(sp.expand(poly), minpoly, x), x)
    return [int(r.coeff_monomial(x**k)) for k in range(n)]


def base(a, kind):
    return [str(a)] if kind == "integers" else [str(a), "0"]


def build(name, kind, minpoly, sigma_poly, root, u, claims_division):
    n = sp.degree(minpoly, x)
    mult = []
    for i in range(n):
        row = []
        for j in range(n):
            row.append([base(c, kind) for c in coords(x ** (i + j), minpoly, n)])
        mult.append(row)
    sig = [[base(c, kind) for c in coords(sigma_poly**i, minpoly, n)] for i in range(n)]
    # embedding j is embedding 0 composed with sigma^j
    emb = []
    cur = x
    for _ in range(n):
        val = complex(sp.N(cur.subs(x, root), 30))
        emb.append([[float(sp.re(v)), float(sp.im(v))] for v in [complex(val) ** k for k in range(n)]])
        cur = sp.rem(sp.expand(sigma_poly.subs(x, cur)), minpoly, x)
    spec = {
        "name": name,
        "base_ring": kind,
        "degree": int(n),
        "basis": ["1"] + [f"t^{k}" if k > 1 else "t" for k in range(1, n)],
        "mult_table": mult,
        "sigma_matrix": sig,
        "embeddings": emb,
        "u": u,
        "claims_division": claims_division,
    }
    (OUT / f"{name}.json").write_text(json.dumps(spec, indent=1) + "\n")


if __name__ == "__main__":
    OUT.mkdir(parents=True, exist_ok=True)
    golden = x**2 - x - 1
    build("golden_u_i", "gaussian", golden, 1 - x, (1 + sp.sqrt(5)) / 2, ["0", "1"], True)
    build("golden_u_1pi", "gaussian", golden, 1 - x, (1 + sp.sqrt(5)) / 2, ["1", "1"], True)
    build("q7_cubic", "eisenstein", x**3 + x**2 - 2 * x - 1, x**2 - 2,
          2 * sp.cos(2 * sp.pi / 7), ["0", "1"], True)
    build("q15_quartic", "gaussian", x**4 - x**3 - 4 * x**2 + 4 * x + 1, x**2 - 2,
          2 * sp.cos(2 * sp.pi / 15), ["0", "1"], True)
    build("gauss_over_Q", "integers", x**2 + 1, -x, sp.I, ["-1"], True)
    build("gauss_over_Q_u5", "integers", x**2 + 1, -x, sp.I, ["5"], False)
