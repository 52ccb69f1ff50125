"""Nearest-integer expansions, convergents, and singularization.

Walks the number-theoretic layer: the signed digit map on [-1/2, 1/2],
the convergent recurrences, and the rewrite that turns a regular
continued fraction into the nearest-integer one.
"""

from fractions import Fraction as F

from nicfdim import Word, convergents, evaluate, nicf_digits, rcf_digits, singularize

print("== digits of 4/11 ==")
print("regular (Gauss map):       ", rcf_digits(F(4, 11), 10))
print("nearest-integer (map T):   ", nicf_digits(F(4, 11), 10))
print("singularize([2, 1, 3]):    ", singularize([2, 1, 3]))
print()

x = F(4, 11)
w = Word(nicf_digits(x, 10))
print("== convergents of", x, "==")
for n, (p, q) in enumerate(convergents(w)):
    print(f"  n={n}:  p={p:>3}  q={q:>3}")
print("evaluate(word) =", evaluate(w), "== x:", evaluate(w) == x)
print()

print("== determinant identity p_(n-1) q_n - q_(n-1) p_n = (-1)^n ==")
w = Word([3, -3, 3, 5, -4])
for n in range(1, len(w) + 1):
    det = w.p[n - 1] * w.q[n] - w.q[n - 1] * w.p[n]
    print(f"  n={n}: det = {det:>2}")
print()

print("== a long rational round-trips through 25 digits ==")
x = F(123456789123456789, 987654321987654323)
x -= round(x)
digits = nicf_digits(x, 25)
err = abs(evaluate(Word(digits)) - x)
print("first digits:", digits[:10])
print("|evaluate(digits) - x| =", float(err), "<= 2^-40:", err <= F(1, 2 ** 40))
