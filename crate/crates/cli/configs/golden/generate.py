"""Regenerates the golden files from brute-force oracles written independently of the Rust code.

    python3 generate.py        (needs numpy)
"""
import json
from decimal import Decimal, getcontext
from pathlib import Path

import numpy as np

getcontext().prec = 50
HERE = Path(__file__).resolve().parent
SQRT2 = Decimal(2).sqrt()


def kronecker_row(r):
    best = None
    n = 1
    while Decimal(n) / SQRT2 <= r:
        x = Decimal(n) / SQRT2
        for m in (int(x), int(x) + 1):
            if m <= r:
                d = abs(x - m)
                if best is None or d < best[0]:
                    best = (d, n, m)
        n += 1
    # convergents p/q of sqrt2 satisfy p^2 - 2 q^2 = +-1
    p, q = 1, 1
    delta = None
    while q <= r:
        if Decimal(p) / SQRT2 <= r:
            d = abs(Decimal(p) / SQRT2 - q)
            delta = d if delta is None else min(delta, d)
        p, q = p + 2 * q, p + q
    bound = (1 + 1 / SQRT2) * delta
    d, n, m = best
    return {"r": float(r), "min_distance": float(d), "n": n, "m": m,
            "delta": float(delta), "bound": float(bound), "bound_holds": d <= bound}


def progression(start, end, step):
    n = int(np.floor((end - start) / step + 1e-9))
    return start + np.arange(n + 1) * step


def chordal(a, b):
    return np.abs(a - b) / (np.sqrt(1 + np.abs(a) ** 2) * np.sqrt(1 + np.abs(b) ** 2))


def scan_golden(eps, window, step, strip, real_step, imag_step, span):
    xs = progression(span[0], span[1], real_step)
    ys = progression(strip[0], strip[1], imag_step)
    z = (xs[None, :] + 1j * ys[:, None]).ravel()
    f = lambda w: np.exp(1j * w) + np.exp(1j * np.sqrt(2) * w)
    base = f(z)
    taus = progression(window[0], window[1], step)
    found = [t for t in taus if chordal(f(z + t), base).max() < eps]
    edges = [window[0]] + found + [window[1]]
    gap = max(max(b - a for a, b in zip(edges, edges[1:])), step)
    return {"function": "exp(i*z)+exp(i*sqrt2*z)", "epsilon": eps, "strip": list(strip),
            "window": list(window), "step": step,
            "grid": {"real_step": real_step, "imag_step": imag_step, "margin": 0.0, "re_span": list(span)},
            "found_count": len(found), "max_gap": gap}


if __name__ == "__main__":
    rows = [kronecker_row(r) for r in (10, 100, 500)]
    (HERE / "kronecker.json").write_text(json.dumps(rows, indent=2) + "\n")
    scan = scan_golden(0.1, (0.0, 500.0), 0.02, (-1.0, 1.0), 0.25, 0.25, (0.0, 20.0))
    (HERE / "scan_two_frequencies.json").write_text(json.dumps(scan, indent=2) + "\n")
