"""Pure-Python Murnaghan-Nakayama level fill.

Same signature and semantics as the compiled ``_mn_kernel.fill_level``; used
when the extension is not built, when ``SNSPEC_PURE_PYTHON`` is set, or when
values could overflow 64-bit integers.
"""


def fill_level(buf, offsets, counts, m, hook_ptr, hook_tgt, hook_sgn, col_r, col_tail):
    """Fill the character table of S_m inside ``buf``.

    ``buf[offsets[k] + i * counts[k] + j]`` holds chi_i(j) for the partitions of
    k in canonical order; levels below ``m`` must already be filled.  Row i's
    rim hooks of length r are ``hook_ptr[i*(m+1)+r] : hook_ptr[i*(m+1)+r+1]``
    into ``hook_tgt`` (row index at level m-r) and ``hook_sgn``.  Column j
    removes its largest cycle ``col_r[j]`` leaving the class ``col_tail[j]``.
    """
    p = counts[m]
    out = offsets[m]
    width = m + 1
    for i in range(p):
        row = i * width
        for j in range(p):
            r = col_r[j]
            lo = hook_ptr[row + r]
            hi = hook_ptr[row + r + 1]
            acc = 0
            if lo < hi:
                sub = offsets[m - r]
                stride = counts[m - r]
                tail = col_tail[j]
                for h in range(lo, hi):
                    acc += hook_sgn[h] * buf[sub + hook_tgt[h] * stride + tail]
            buf[out + i * p + j] = acc
