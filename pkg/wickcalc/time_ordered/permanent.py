"""Matrix permanent by Ryser's formula."""
import numpy as np

from ..errors import ShapeError

MAX_ORDER = 20


def permanent(matrix) -> complex:
    """Permanent of a square matrix.

    Ryser's inclusion-exclusion over column subsets, visited in Gray-code
    order so each step adds or removes a single column from the running row
    sums: O(2^n n).

    Raises:
        ShapeError: if the matrix is not square or larger than 20 x 20
    """
    a = np.asarray(matrix, dtype=complex)
    if a.ndim != 2 or a.shape[0] != a.shape[1]:
        raise ShapeError(f"permanent needs a square matrix, got shape {a.shape}")
    n = a.shape[0]
    if n == 0:
        return 1 + 0j
    if n > MAX_ORDER:
        raise ShapeError(f"permanent limited to {MAX_ORDER}x{MAX_ORDER}, got {n}x{n}")

    row_sums = np.zeros(n, dtype=complex)
    total = 0j
    gray = 0
    for k in range(1, 1 << n):
        column = (k & -k).bit_length() - 1
        gray ^= 1 << column
        if gray >> column & 1:
            row_sums += a[:, column]
        else:
            row_sums -= a[:, column]
        term = np.prod(row_sums)
        total += -term if bin(gray).count("1") & 1 else term
    return complex(total if n % 2 == 0 else -total)
