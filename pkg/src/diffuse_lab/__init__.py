"""Exact computations around diffuse groups.

Submodules: ``qfield`` (number fields), ``quat`` (quaternion algebras),
``linrep`` (matrix groups and word balls), ``ravel`` (extremal points and
ravels), ``hyp`` (hyperbolic geometry and separation criteria), ``crystal``
(crystallographic and finite groups), ``weeks`` (the Weeks group and the
level-3 quaternion group) and ``cli``.
"""
