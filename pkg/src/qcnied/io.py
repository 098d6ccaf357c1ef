"""Line-oriented text formats for matrices, keys, ciphertexts, and reports.

All files are UTF-8 with LF endings, lowercase fixed-width hex, and a
version header that is matched exactly; unknown versions are rejected,
never guessed. Serializers are canonical, so write(read(x)) == x byte
for byte.

  QCMAT v1    block-circulant matrix: params `p m1 m2 eta`, modulus hex,
              then one line of p hex tokens per block in row-major grid
              order.
  NIEDQC v1   key files: `private` carries the scrambler rows (bit-packed
              hex, bit j of a row = column j), the column permutation as
              an image list, and the structured blocks; `public` carries
              dense hex rows of H'. Both carry `p m1 m2 eta e`.
  ciphertext  k lines, one hex field element per line, no header.
  QCREP v1    flat `key: value` report lines; autgroup reports append one
              `elem:` line per group element.
"""

from __future__ import annotations

import numpy as np

from .circulant import BlockCirculant, ParityCheck, Perm
from .errors import ParseError, QcniedError
from .field import FieldCtx
from .niederreiter import PrivateKey, PublicKey

QCMAT_HEADER = "QCMAT v1"
NIEDQC_HEADER = "NIEDQC v1"
QCREP_HEADER = "QCREP v1"


def _int_token(tok: str, what: str) -> int:
    if not tok or tok != tok.strip() or not tok.lstrip("-").isdigit():
        raise ParseError(f"bad {what}: {tok!r}")
    return int(tok)


def _parse_params(line: str, n_fields: int, what: str) -> list[int]:
    toks = line.split(" ")
    if len(toks) != n_fields:
        raise ParseError(f"{what}: expected {n_fields} fields, got {len(toks)}")
    return [_int_token(t, what) for t in toks]


def _ctx_from(eta: int, modulus_hex: str) -> FieldCtx:
    # same lowercase-only discipline as every other token in these formats
    if not modulus_hex or any(c not in "0123456789abcdef" for c in modulus_hex):
        raise ParseError(f"bad modulus hex {modulus_hex!r}")
    modulus = int(modulus_hex, 16)
    try:
        return FieldCtx(eta, modulus)
    except QcniedError as exc:
        raise ParseError(f"bad field parameters: {exc}") from exc


def _parse_row(ctx: FieldCtx, line: str, p: int) -> tuple[int, ...]:
    toks = line.split(" ")
    if len(toks) != p:
        raise ParseError(f"block row: expected {p} tokens, got {len(toks)}")
    try:
        return tuple(ctx.parse_hex(t) for t in toks)
    except QcniedError as exc:
        raise ParseError(f"bad block row {line!r}: {exc}") from exc


def _format_row(ctx: FieldCtx, row) -> str:
    return " ".join(ctx.format_hex(a) for a in row)


def _lines(text: str, what: str) -> list[str]:
    if "\r" in text:
        raise ParseError(f"{what}: CR line endings are not accepted")
    if not text.endswith("\n"):
        raise ParseError(f"{what}: missing trailing newline")
    return text[:-1].split("\n")


def write_matrix(c: BlockCirculant) -> str:
    out = [QCMAT_HEADER, f"{c.p} {c.m1} {c.m2} {c.ctx.eta}", format(c.ctx.modulus, "x")]
    out.extend(_format_row(c.ctx, row) for row in c.block_first_rows())
    return "\n".join(out) + "\n"


def read_matrix(text: str) -> BlockCirculant:
    lines = _lines(text, "matrix file")
    if not lines or lines[0] != QCMAT_HEADER:
        raise ParseError(f"matrix file: expected header {QCMAT_HEADER!r}")
    if len(lines) < 3:
        raise ParseError("matrix file: truncated")
    p, m1, m2, eta = _parse_params(lines[1], 4, "matrix params")
    ctx = _ctx_from(eta, lines[2])
    n_blocks = m1 * (m2 - m1)
    body = lines[3:]
    if len(body) != n_blocks:
        raise ParseError(f"matrix file: expected {n_blocks} block rows, got {len(body)}")
    if p < 1 or m1 < 1 or m2 <= m1:
        raise ParseError(f"matrix file: bad shape p={p} m1={m1} m2={m2}")
    rows = [_parse_row(ctx, line, p) for line in body]
    try:
        return BlockCirculant.from_rows(ctx, p, m1, m2, rows)
    except QcniedError as exc:
        raise ParseError(f"matrix file: {exc}") from exc


def _pack_bits_hex(bits, width: int) -> str:
    value = 0
    for j, b in enumerate(bits):
        value |= int(b) << j
    return format(value, f"0{(width + 3) // 4}x")


def _unpack_bits(tok: str, width: int):
    try:
        value = int(tok, 16)
    except ValueError as exc:
        raise ParseError(f"bad bit-packed row {tok!r}") from exc
    if value >= 1 << width:
        raise ParseError(f"bit-packed row {tok!r} wider than {width} bits")
    return [(value >> j) & 1 for j in range(width)]


def write_private_key(priv: PrivateKey, e: int) -> str:
    c = priv.h.c
    k = priv.h.k
    out = [
        NIEDQC_HEADER,
        "private",
        f"{c.p} {c.m1} {c.m2} {c.ctx.eta} {e}",
        format(c.ctx.modulus, "x"),
    ]
    out.extend(_pack_bits_hex(priv.a0[i], k) for i in range(k))
    out.append(" ".join(str(i) for i in priv.b0.images))
    out.extend(_format_row(c.ctx, row) for row in c.block_first_rows())
    return "\n".join(out) + "\n"


def read_private_key(text: str) -> tuple[PrivateKey, int]:
    lines = _lines(text, "private key")
    if len(lines) < 4 or lines[0] != NIEDQC_HEADER:
        raise ParseError(f"private key: expected header {NIEDQC_HEADER!r}")
    if lines[1] != "private":
        raise ParseError(f"private key: expected kind 'private', got {lines[1]!r}")
    p, m1, m2, eta, e = _parse_params(lines[2], 5, "key params")
    ctx = _ctx_from(eta, lines[3])
    k, n = m1 * p, m2 * p
    n_blocks = m1 * (m2 - m1)
    expect = 4 + k + 1 + n_blocks
    if len(lines) != expect:
        raise ParseError(f"private key: expected {expect} lines, got {len(lines)}")
    a0 = np.array([_unpack_bits(lines[4 + i], k) for i in range(k)], dtype=np.uint8)
    images = _parse_params(lines[4 + k], n, "permutation images")
    try:
        b0 = Perm(images)
    except QcniedError as exc:
        raise ParseError(f"private key: {exc}") from exc
    rows = [_parse_row(ctx, lines[5 + k + i], p) for i in range(n_blocks)]
    try:
        c = BlockCirculant.from_rows(ctx, p, m1, m2, rows)
    except QcniedError as exc:
        raise ParseError(f"private key: {exc}") from exc
    return PrivateKey(a0=a0, h=ParityCheck(c), b0=b0), e


def write_public_key(pub: PublicKey) -> str:
    ctx = FieldCtx(pub.eta, pub.modulus)
    out = [
        NIEDQC_HEADER,
        "public",
        f"{pub.p} {pub.m1} {pub.m2} {pub.eta} {pub.e}",
        format(ctx.modulus, "x"),
    ]
    out.extend(_format_row(ctx, pub.hprime[i]) for i in range(pub.k))
    return "\n".join(out) + "\n"


def read_public_key(text: str) -> PublicKey:
    lines = _lines(text, "public key")
    if len(lines) < 4 or lines[0] != NIEDQC_HEADER:
        raise ParseError(f"public key: expected header {NIEDQC_HEADER!r}")
    if lines[1] != "public":
        raise ParseError(f"public key: expected kind 'public', got {lines[1]!r}")
    p, m1, m2, eta, e = _parse_params(lines[2], 5, "key params")
    ctx = _ctx_from(eta, lines[3])
    k, n = m1 * p, m2 * p
    if len(lines) != 4 + k:
        raise ParseError(f"public key: expected {4 + k} lines, got {len(lines)}")
    rows = [_parse_row(ctx, lines[4 + i], n) for i in range(k)]
    return PublicKey(
        hprime=np.array(rows, dtype=np.int64), p=p, m1=m1, m2=m2, eta=eta, e=e,
        modulus=ctx.modulus,
    )


def write_ciphertext(ctx: FieldCtx, y) -> str:
    return "\n".join(ctx.format_hex(a) for a in y) + "\n"


def read_ciphertext(ctx: FieldCtx, text: str, k: int) -> tuple[int, ...]:
    lines = _lines(text, "ciphertext")
    if len(lines) != k:
        raise ParseError(f"ciphertext: expected {k} lines, got {len(lines)}")
    try:
        return tuple(ctx.parse_hex(line) for line in lines)
    except QcniedError as exc:
        raise ParseError(f"ciphertext: {exc}") from exc


def write_report(fields, elems=None) -> str:
    out = [QCREP_HEADER]
    out.extend(f"{key}: {value}" for key, value in fields)
    if elems:
        for p1, p2 in elems:
            left = " ".join(str(i) for i in p1.images)
            right = " ".join(str(i) for i in p2.images)
            out.append(f"elem: {left} | {right}")
    return "\n".join(out) + "\n"


def read_report(text: str) -> tuple[dict[str, str], list[tuple[Perm, Perm]]]:
    lines = _lines(text, "report")
    if not lines or lines[0] != QCREP_HEADER:
        raise ParseError(f"report: expected header {QCREP_HEADER!r}")
    fields: dict[str, str] = {}
    elems: list[tuple[Perm, Perm]] = []
    for line in lines[1:]:
        key, sep, value = line.partition(": ")
        if not sep:
            raise ParseError(f"report: bad line {line!r}")
        if key == "elem":
            left, bar, right = value.partition(" | ")
            if not bar:
                raise ParseError(f"report: bad element line {line!r}")
            try:
                p1 = Perm(_parse_params(left, len(left.split(" ")), "element images"))
                p2 = Perm(_parse_params(right, len(right.split(" ")), "element images"))
            except QcniedError as exc:
                raise ParseError(f"report: {exc}") from exc
            elems.append((p1, p2))
        else:
            fields[key] = value
    return fields, elems
