"""Reproducible random sources.

Every randomized operation takes an explicit ``numpy.random.Generator``.
Parallel work is split into fixed-size chunks, each seeded from the master
seed and the chunk index, so results do not depend on worker count or
scheduling order.
"""

import numpy as np

# Samples per worker chunk.  Fixed so that chunk boundaries (and therefore
# every sub-stream) are independent of the thread count.
CHUNK = 256


def substream(seed, *path):
    """Return a generator for sub-stream ``path`` of a 64-bit master seed."""
    return np.random.default_rng([int(seed) & 0xFFFFFFFFFFFFFFFF, *map(int, path)])


def chunk_ranges(n, chunk=CHUNK):
    """Split ``range(n)`` into consecutive (start, stop) chunk bounds."""
    return [(lo, min(lo + chunk, n)) for lo in range(0, n, chunk)]
