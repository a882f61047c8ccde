"""czkit: a desk-scale numerical workbench for weighted norm inequalities.

Building blocks: a scalar Young-function calculus, Luxemburg norms and
Orlicz maximal operators on uniform grids, Muckenhoupt weight constants,
the discretized principal-value convolution with the Cauchy kernel and
its symbol commutators, the stopping-time decomposition, the
geometric-series smoothing algorithm, and a harness that measures implied
constants for the associated inequalities.
"""

__version__ = "0.1.0"
