"""Print the lifespan exponent laws and the comparison with the general theory.

Run:  python3 demos/exponent_tables.py
"""

from slwave import (
    ModelParams,
    classify_regime,
    general_theory_exponent,
    highdim_reference_exponent,
    improvement_gap,
    lifespan_exponent,
    remark_identities,
)


def show(params, mean_zero):
    reg = classify_regime(params, mean_zero)
    law = lifespan_exponent(params, mean_zero)
    gen = general_theory_exponent(params, mean_zero)
    print(
        f"  (p,q,r)=({params.p:g},{params.q:g},{params.r:g})"
        f"  mean_zero={mean_zero}  regime={reg.tag.value:16s}"
        f"  k={law.exponent_k:.6g}  k_general={gen.exponent_k:.6g}"
    )


print("Sharp lifespan exponents T(eps) ~ C eps^{-k}")
print("=" * 60)
for triple in [(2.0, 2.0, 6.0), (1.5, 1.5, 3.0), (1.3, 1.3, 3.0), (4.0, 4.0, 3.0)]:
    for mz in (False, True):
        show(ModelParams(*triple), mz)

print()
print("Improvement over the general theory, family (m, m, 2m+1), zero mean")
print("  m   k_here      k_general   gap")
for m in range(2, 8):
    params = ModelParams(float(m), float(m), 2.0 * m + 1.0)
    kh = lifespan_exponent(params, True).exponent_k
    kg = general_theory_exponent(params, True).exponent_k
    gap, strict = improvement_gap(params)
    assert strict
    print(f"  {m}   {kh:<10.8g}  {kg:<10.8g}  {gap:.8g}")

print()
print("Crossover value of p+q equalizing the two zero-mean sub-laws")
for r in (2.0, 3.0, 6.0, 11.0):
    rem = remark_identities(r)
    print(f"  r={r:g}: crossover p+q = {rem['crossover']:.6g}  "
          f"(strictly inside ((r+1)/2, r): {rem['above_half'] and rem['below_r']})")

print()
k, valid = highdim_reference_exponent(2.0, 3.0, 1)
print(f"1d reduction of the n-dimensional reference law at (p,r)=(2,3): "
      f"k = {k:.6g} (valid: {valid})")
