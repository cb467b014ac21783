"""Pure-Python posting-list kernels.

Contract shared with the compiled module: inputs are strictly increasing
int64 sequences (``array('q')`` in practice), outputs are new strictly
increasing ``array('q')`` values, and inputs are never mutated. Set-based
implementations beat hand-rolled two-pointer loops in CPython by a wide
margin, so that is what the fallback uses.
"""

from array import array


def intersect(a, b) -> array:
    """Elements common to two sorted posting lists, sorted."""
    if not len(a) or not len(b):
        return array("q")
    common = set(a)
    common.intersection_update(b)
    return array("q", sorted(common))


def intersect_count(a, b) -> int:
    """Number of elements common to two sorted posting lists."""
    if len(a) > len(b):
        a, b = b, a
    if not len(a):
        return 0
    small = set(a)
    small.intersection_update(b)
    return len(small)


def difference_count(a, b) -> int:
    """Number of elements of ``a`` that are not in ``b``."""
    return len(a) - intersect_count(a, b)


def shifted_intersect(a, b, shift: int) -> array:
    """Elements x of ``a`` with x + shift present in ``b``, sorted."""
    if not len(a) or not len(b):
        return array("q")
    present = set(b)
    return array("q", [x for x in a if x + shift in present])
