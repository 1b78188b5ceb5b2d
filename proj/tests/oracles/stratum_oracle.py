"""Soundness oracle for empty-by-chain stratum certificates.

For each candidate the CLI is run with --json and every certificate of kind
empty-by-chain is collected. The equations restricted to the stratum are then
instantiated with random coefficients, over Q and over GF(10007): monomials are
kept or dropped at random, except that pure powers forced by quasi-smoothness
(derived here independently from the weights and the basket) always get a
nonzero coefficient in the first equation of their degree. A weighted
homogeneous system has only the trivial solution exactly when its ideal is
zero-dimensional, which a Groebner basis decides.

Usage: stratum_oracle.py <fano-rigidity binary> [instances]
Exit status 0 when every instance has only the trivial solution.
"""
import itertools
import json
import random
import re
import subprocess
import sys

import sympy as sp

PRIME = 10007
RUNS = [["#25"], ["#166", "--isolating-product", "20"], ["#282", "--format", "g2"],
        ["#282", "--format", "c2"], ["#308"]]


def parse_ambient(text):
    return [(m.group(2), int(m.group(1))) for m in re.finditer(r"(\d+)_(\w+)", text)]


def basket_indices(basket):
    return {int(re.match(r"1/(\d+)", b["type"]).group(1)) for b in basket}


def forced_pure_powers(coords, degrees, indices):
    """Pure powers x^k forced into the first equation of the only degree divisible by a."""
    out = {}
    weights = [a for _, a in coords]
    for name, a in coords:
        if a == 1 or weights.count(a) != 1 or a in indices:
            continue
        divisible = sorted({d for d in degrees if d % a == 0})
        if len(divisible) == 1:
            out.setdefault(divisible[0], []).append((name, divisible[0] // a))
    return out


def monomials(live, weights, d):
    def rec(i, rest):
        if i == len(live):
            if rest == 0:
                yield ()
            return
        for e in range(rest // weights[i] + 1):
            for tail in rec(i + 1, rest - e * weights[i]):
                yield (e,) + tail
    return list(rec(0, d))


def collect(node, found):
    if isinstance(node, dict):
        if node.get("kind") == "empty-by-chain" and "zeroed" in node:
            found.add(node["zeroed"])
        for v in node.values():
            collect(v, found)
    elif isinstance(node, list):
        for v in node:
            collect(v, found)


def random_coeff(rng, nonzero):
    while True:
        c = rng.randint(-9, 9)
        if c or not nonzero:
            return c


def instance_trivial(rng, coords, degrees, forced, zeroed, modulus):
    live = [(n, a) for n, a in coords if n not in zeroed]
    syms = sp.symbols([n for n, _ in live])
    weights = [a for _, a in live]
    eqs, first_of_degree = [], set()
    for d in degrees:
        powers = []
        if d not in first_of_degree:
            first_of_degree.add(d)
            powers = [(n, k) for n, k in forced.get(d, []) if n not in zeroed]
        f = 0
        for e in monomials(live, weights, d):
            mono = sp.Mul(*[s**k for s, k in zip(syms, e)])
            is_power = any(sum(e) == k and dict(zip([n for n, _ in live], e)).get(n) == k for n, k in powers)
            if is_power:
                f += random_coeff(rng, True) * mono
            elif rng.random() < 0.5:
                f += random_coeff(rng, False) * mono
        if f != 0:
            eqs.append(f)
    if not eqs:
        return False
    opts = {"modulus": modulus} if modulus else {}
    return sp.groebner(eqs, *syms, order="grevlex", **opts).is_zero_dimensional


def main():
    binary = sys.argv[1]
    n = int(sys.argv[2]) if len(sys.argv) > 2 else 100
    rng = random.Random(20240617)
    checked, failures, seen = 0, [], set()
    control = None
    for args in RUNS:
        out = subprocess.run([binary, "verify", *args, "--json"], capture_output=True, text=True)
        report = json.loads(out.stdout)
        cand = report["candidate"]
        coords = parse_ambient(cand["ambient"])
        degrees = cand["eq_degrees"]
        forced = forced_pure_powers(coords, degrees, basket_indices(cand["basket"]))
        strata = set()
        collect(report["centers"], strata)
        if cand["id"] == "#282":
            control = (coords, degrees, forced)
        for z in sorted(strata):
            if (cand["id"], z) in seen:
                continue
            seen.add((cand["id"], z))
            zeroed = set(z.strip("{}").split(","))
            for modulus in (None, PRIME):
                for _ in range(n):
                    checked += 1
                    if not instance_trivial(rng, coords, degrees, forced, zeroed, modulus):
                        failures.append(f"{cand['id']} {z} over {'GF(%d)' % modulus if modulus else 'Q'}")
                        break
            print(f"{cand['id']} stratum {z}: {n} instances over Q and over GF({PRIME})")
    # Negative control: on #282 the stratum with only q, r live contains p_r
    # whenever r^3 is dropped from both degree-18 equations.
    coords, degrees, forced = control
    zeroed = {n for n, _ in coords} - {"q", "r"}
    nontrivial = sum(not instance_trivial(rng, coords, degrees, forced, zeroed, None) for _ in range(n))
    print(f"negative control #282 live {{q,r}}: {nontrivial} of {n} instances have a nontrivial solution")
    if nontrivial == 0:
        failures.append("negative control never detected a solution")
    print(f"checked {checked} instances, {len(failures)} failures")
    for f in failures:
        print("FAIL", f)
    return 1 if failures else 0


if __name__ == "__main__":
    sys.exit(main())
