"""Independent numpy reference values for the frozen constants in the C++ tests.

Run: python3 tests/oracle/oracle.py
"""
import itertools
import math

import numpy as np


def rw_matrix(n, rates):
    g = np.zeros((n, n))
    for (i, j), r in rates.items():
        g[i, j] += r
        g[j, i] += r
        g[i, i] -= r
        g[j, j] -= r
    return g


def ip_matrix(n, rates):
    perms = list(itertools.permutations(range(n)))
    index = {p: k for k, p in enumerate(perms)}
    g = np.zeros((len(perms), len(perms)))
    for (i, j), r in rates.items():
        for p in perms:
            q = tuple(j if v == i else i if v == j else v for v in p)
            g[index[q], index[p]] += r
            g[index[p], index[p]] -= r
    return g


def gap(g):
    return np.sort(np.linalg.eigvalsh(-g))[1]


def lattice_rates(points):
    rates = {}
    for a in range(len(points)):
        for b in range(a + 1, len(points)):
            if sum(abs(x - y) for x, y in zip(points[a], points[b])) == 1:
                rates[(a, b)] = 1.0
    return rates


def traceable_order(d, n_max):
    out = [tuple([1] * d)]
    for n in range(1, n_max):
        for k in range(1, d + 1):
            ranges = []
            for i in range(1, d + 1):
                if i < k:
                    ranges.append(range(1, n + 2))
                elif i == k:
                    ranges.append([n + 1])
                else:
                    ranges.append(range(1, n + 1))
            out.extend(itertools.product(*ranges))
    return out


def main():
    np.set_printoptions(precision=17)
    print("path3 rw spectrum", np.linalg.eigvalsh(-rw_matrix(3, {(0, 1): 1, (1, 2): 1})))
    k3 = {(0, 1): 1.0, (0, 2): 1.0, (1, 2): 1.0}
    print("K3 rw spectrum", np.linalg.eigvalsh(-rw_matrix(3, k3)))
    print("K3 ip spectrum", np.linalg.eigvalsh(-ip_matrix(3, k3)))
    sq = [(1, 1), (1, 2), (2, 1), (2, 2)]
    print("R2_2 spectrum", np.linalg.eigvalsh(-rw_matrix(4, lattice_rates(sq))))

    order = traceable_order(2, 3)
    for n in range(2, 10):
        rates = lattice_rates(order[:n])
        rw = gap(rw_matrix(n, rates))
        line = f"d2 V_{n} rw={rw!r}"
        if n <= 7:
            line += f" ip={gap(ip_matrix(n, rates))!r}"
        print(line)

    # Delta_3 for the 3-cycle 1->2->3->1 applied to (1,0,0); U(pi) f(i) = f(pi^-1(i)).
    pi = [1, 2, 0]
    inv = [0] * 3
    for a, b in enumerate(pi):
        inv[b] = a
    f = np.array([1.0, 0.0, 0.0])
    u = np.array([f[inv[i]] for i in range(3)])
    uinv = np.array([f[pi[i]] for i in range(3)])
    print("delta 3-cycle", -f + 0.5 * u + 0.5 * uinv)

    for d in (1, 2, 3):
        n = 1
        while 1 - (2 * d + 2 * math.pi ** 2 + 2 ** d - 1) / n <= 0:
            n += 1
        print(f"first non-vacuous upper bound d={d}: n={n}")
    gn = 4 * math.sin(math.pi / 202) ** 2
    print("upper d=1 n=100", repr(gn / (1 - (3 + 2 * math.pi ** 2) / 100)))

    for n in (20, 30, 40):
        d = 2
        lower = (1 - (2 * d + 2 ** d - 1) / n) / (1 + 2 * math.pi ** 2 / n) * 4 * math.sin(math.pi / (2 * n)) ** 2
        upper = 4 * math.sin(math.pi / (2 * (n + 1))) ** 2 / (1 - (2 * d + 2 * math.pi ** 2 + 2 ** d - 1) / n)
        lo_n, hi_n = n * n, (n + 1) ** 2
        width = max(upper * hi_n, upper * lo_n) / math.pi ** 2 - min(lower * lo_n, lower * hi_n) / math.pi ** 2
        print(f"sandwich d=2 n={n} lower={lower!r} upper={upper!r} envelope={width!r}")

    t = 0.5
    print("find_tk N=2 target 1:", t, gap(rw_matrix(2, {(0, 1): t})))

    path = {}
    gaps = []
    for n in range(2, 7):
        path[(n - 2, n - 1)] = 1.0
        gaps.append(gap(rw_matrix(n, dict(path))))
    print("path gaps", gaps, "target", repr(4 * math.sin(math.pi / 12) ** 2))


if __name__ == "__main__":
    main()
