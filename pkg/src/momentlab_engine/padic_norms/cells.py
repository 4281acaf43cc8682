import logging

import numpy as np

from ..core.exceptions import DomainError

logger = logging.getLogger(__name__)

BRUTE_FORCE_PRIMES = (2, 3, 5)
BRUTE_FORCE_MAX_LEVEL = 3
_PAIR_CHUNK = 128


def cell_index(q: int, ell: int) -> int:
    """
    Number of K-cosets in the Cartan cell K diag(1, w^ell) K of PGL(2), i.e. its measure
    when meas(K) = 1: 1 for ell = 0 and (q + 1) q^(ell - 1) otherwise.

    Raises:
        DomainError: For ell < 0 or q < 2.
    """
    if ell < 0 or q < 2:
        raise DomainError(f"cell_index needs q >= 2 and ell >= 0, got q={q}, ell={ell}.")
    if ell == 0:
        return 1
    return (q + 1) * q ** (ell - 1)


def brute_force_cell_count(p: int, ell: int) -> int:
    """
    Counts the subgroups H of (Z/p^ell)^2 with cyclic quotient of order p^ell by exhaustive search.

    Every such H is the kernel of a surjection (x, y) -> a x + b y onto Z/p^ell; the
    kernels of all surjections are computed as membership masks over the whole group and
    the distinct masks are counted. These subgroups are in bijection with the K-cosets of
    the Cartan cell of level ell, so the count is an independent check of ``cell_index``.

    Args:
        p (int): One of 2, 3, 5.
        ell (int): Level, 1 <= ell <= 3.

    Returns:
        int: Number of distinct kernels.

    Raises:
        DomainError: Outside the enumerated range.
    """
    if p not in BRUTE_FORCE_PRIMES or not 1 <= ell <= BRUTE_FORCE_MAX_LEVEL:
        raise DomainError(f"brute_force_cell_count covers p in {BRUTE_FORCE_PRIMES}, 1 <= ell <= 3; got p={p}, ell={ell}.")
    n = p**ell
    grid = np.arange(n)
    x = np.repeat(grid, n)
    y = np.tile(grid, n)
    a, b = np.meshgrid(grid, grid, indexing="ij")
    surjective = (a % p != 0) | (b % p != 0)
    pairs = np.stack([a[surjective], b[surjective]], axis=1)
    kernels = set()
    for start in range(0, len(pairs), _PAIR_CHUNK):
        block = pairs[start:start + _PAIR_CHUNK]
        masks = (block[:, :1] * x[None, :] + block[:, 1:] * y[None, :]) % n == 0
        kernels.update(np.packbits(row).tobytes() for row in masks)
    logger.debug("brute_force_cell_count(p=%d, ell=%d): %d surjections, %d kernels", p, ell, len(pairs), len(kernels))
    return len(kernels)
