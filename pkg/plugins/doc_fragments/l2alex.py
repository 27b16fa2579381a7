# Copyright: (c) 2026, l2alex contributors
# GNU General Public License v3.0+ (see COPYING or https://www.gnu.org/licenses/gpl-3.0.txt)


from __future__ import annotations


class ModuleDocFragment:
    DOCUMENTATION = """
options:
  eps:
    description:
      - Regularization ladder used for the Fuglede-Kadison determinant.
      - The estimate is taken at the smallest value, and the ladder is extrapolated to zero.
    default: [0.1, 0.01, 0.001]
    type: list
    elements: float
  terms:
    description:
      - Number of terms of the logarithm series.
      - Fewer terms are summed when O(max_support) stops the operator powers first, and the
        result is then reported as not converged.
    default: 12
    type: int
  prune:
    description:
      - Group ring coefficients below this threshold are dropped from the operator powers.
      - The dropped mass is reported as an error bound.
    default: 1e-12
    type: float
  max_support:
    description:
      - Largest number of group ring terms kept in one operator power.
      - Bounds the running time of the series, which otherwise grows exponentially with O(terms).
    default: 25000
    type: int
  method:
    description:
      - With V(auto), a twisted matrix in monomial territory is evaluated exactly by factoring
        out its dominating part, and every other matrix goes through the regularized series.
      - With V(series), the regularized series is always used.
    default: auto
    choices: [auto, series]
    type: str
  threads:
    description:
      - Number of worker threads.
      - You can also set this option by using the C(L2ALEX_THREADS) environment variable.
    default: 1
    type: int

requirements:
  - sympy >= 1.12
  - numpy >= 1.24
"""
