"""Quadruple-loop brute force for p*a + q*b + r + s*h = L."""
import math


def brute_covers(T, L):
    lf = float(L)
    bound = lambda x: int(math.floor(lf / float(x) + 1e-9)) + 1
    out = []
    for p in range(bound(T.a) + 1):
        for q in range(bound(T.b) + 1):
            for r in range(bound(1) + 1):
                for s in range(bound(T.h) + 1):
                    if p * T.a + q * T.b + r + s * T.h == L:
                        out.append((p, q, r, s))
    return sorted(out)
