"""
Exact surd arithmetic
=====================

Everything in this package that touches an eigenvalue runs on SurdSum:
finite sums c1*sqrt(n1) + c2*sqrt(n2) + ... with rational coefficients and
squarefree radicands.  The normal form is canonical, so equality is just
structural equality, and signs are decided by rational arithmetic alone.
"""

from fractions import Fraction

from skewfiss import ComplexSurd, SurdSum, as_integer, surd_sign, surd_sqrt

# square roots normalize themselves: 18 = 9 * 2
print("sqrt(18)      =", surd_sqrt(18))
print("sqrt(49/4)    =", surd_sqrt(Fraction(49, 4)))
print("sqrt(324)     =", surd_sqrt(324))

# arithmetic stays exact and collapses radicands where possible
one = SurdSum(1)
s5 = surd_sqrt(5)
print("(1+sqrt5)(1-sqrt5) =", (one + s5) * (one - s5))
print("sqrt2 * sqrt8      =", surd_sqrt(2) * surd_sqrt(8))

# the two conference eigenvalues on 13 points sum to -1, exactly
r = (SurdSum(-1) + surd_sqrt(13)) / 2
s = (SurdSum(-1) - surd_sqrt(13)) / 2
print("r + s =", r + s, "   r * s =", r * s)

# exact signs: 6 - sqrt(84) is negative because 36 < 84
print("sign(6 - sqrt84) =", surd_sign(SurdSum(6) - surd_sqrt(84)))

# mixed three-term sums fall back to rational interval refinement
x = surd_sqrt(2) + surd_sqrt(3) - surd_sqrt(10)
print(f"sign({x}) =", x.sign(), "   (float check: %.6f)" % float(x))

# integer detection drives every feasibility decision downstream
print("as_integer(38*sqrt(324) - 684 + 684) =",
      as_integer(38 * surd_sqrt(324) - 684 + SurdSum(684)))
print("as_integer(3*sqrt2) =", as_integer(3 * surd_sqrt(2)))

# complex values carry a SurdSum real part and a SurdSum coefficient of i
z = ComplexSurd(Fraction(-5, 2), surd_sqrt(19) / 2)
print("z        =", z)
print("z * conj =", z * z.conjugate())
