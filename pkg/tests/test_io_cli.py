"""File formats and the command line driver."""

import numpy as np
import pytest

from qcnied import io
from qcnied.circulant import BlockCirculant, ParityCheck, Perm
from qcnied.cli import main
from qcnied.conditions import sample_compliant, sample_variant
from qcnied.distinguish import dk_bound
from qcnied.errors import ParseError
from qcnied.field import FieldCtx
from qcnied.niederreiter import encrypt, error_capacity, keygen
from qcnied.autgroup import stab_full

from test_autgroup import FANO_ROW


@pytest.fixture
def c512():
    return sample_compliant(5, 1, 2, 2, seed=3)


def keypair(c, seed=9):
    h = ParityCheck(c)
    cap = error_capacity(h)
    priv, pub = keygen(h, seed, cap=cap)
    return priv, pub, cap


# ---------------------------------------------------------------- formats


def test_matrix_roundtrip_custom_modulus():
    # x^3 + x^2 + 1, not the default modulus for eta = 3
    ctx = FieldCtx(3, 0b1101)
    c = BlockCirculant.from_rows(ctx, 5, 1, 2, [(1, 2, 3, 4, 5)])
    text = io.write_matrix(c)
    assert text.splitlines()[2] == "d"
    back = io.read_matrix(text)
    assert back.ctx == ctx
    assert list(back.block_first_rows()) == list(c.block_first_rows())
    assert io.write_matrix(back) == text


def test_matrix_rejections(c512):
    good = io.write_matrix(c512)
    bad = [
        good.replace("QCMAT v1", "QCMAT v2"),
        good.replace("\n", "\r\n"),
        good[:-1],
        good + "0 0 0 0 0\n",
        good.replace("5 1 2 2", "5 1 2"),
        good.replace("5 1 2 2", "5 2 1 2"),
        good.replace("5 1 2 2", "0 1 2 2"),
    ]
    for text in bad:
        with pytest.raises(ParseError):
            io.read_matrix(text)
    with pytest.raises(ParseError):
        io.read_matrix("QCMAT v1\n")


def test_matrix_rejects_bad_tokens():
    ctx = FieldCtx(4)
    c = BlockCirculant.from_rows(ctx, 5, 1, 2, [(1, 10, 3, 2, 5)])
    good = io.write_matrix(c)
    assert " a " in good.splitlines()[3] + " "
    for tampered in (
        good.replace(" a ", " A "),       # uppercase digit
        good.replace(" a ", " 10 "),      # extra token
        good.replace("13\n", "1G\n"),     # bad modulus hex
        good.replace("13\n", "D\n"),      # uppercase modulus
    ):
        with pytest.raises(ParseError):
            io.read_matrix(tampered)
    # out of range for eta = 2 even though the digit itself is valid hex
    ctx2 = FieldCtx(2)
    c2 = BlockCirculant.from_rows(ctx2, 5, 1, 2, [(1, 2, 3, 0, 1)])
    with pytest.raises(ParseError):
        io.read_matrix(io.write_matrix(c2).replace("1 2 3 0 1", "1 2 7 0 1"))


def test_private_key_roundtrip(c512):
    priv, _pub, cap = keypair(c512)
    text = io.write_private_key(priv, cap.e)
    back, e = io.read_private_key(text)
    assert e == cap.e
    assert np.array_equal(back.a0, priv.a0)
    assert back.b0 == priv.b0
    assert list(back.h.c.block_first_rows()) == list(c512.block_first_rows())
    assert io.write_private_key(back, e) == text


def test_private_key_rejections(c512):
    priv, _pub, cap = keypair(c512)
    good = io.write_private_key(priv, cap.e)
    lines = good[:-1].split("\n")
    images = lines[9].split(" ")
    dup = list(images)
    dup[0] = dup[1]
    cases = [
        "\n".join(["NIEDQC v2"] + lines[1:]) + "\n",
        "\n".join([lines[0], "public"] + lines[2:]) + "\n",
        "\n".join(lines[:-1]) + "\n",                     # short one line
        good + lines[-1] + "\n",                          # long one line
        "\n".join(lines[:9] + [" ".join(dup)] + lines[10:]) + "\n",
    ]
    for text in cases:
        with pytest.raises(ParseError):
            io.read_private_key(text)


def test_public_key_roundtrip_custom_modulus():
    ctx = FieldCtx(3, 0b1101)
    c = BlockCirculant.from_rows(ctx, 5, 1, 2, [(1, 2, 3, 4, 5)])
    _priv, pub, _cap = keypair(c)
    text = io.write_public_key(pub)
    back = io.read_public_key(text)
    assert back.modulus == 0b1101
    assert np.array_equal(back.hprime, pub.hprime)
    assert (back.p, back.m1, back.m2, back.eta, back.e) == (
        pub.p, pub.m1, pub.m2, pub.eta, pub.e,
    )
    assert io.write_public_key(back) == text


def test_ciphertext_roundtrip(c512):
    _priv, pub, _cap = keypair(c512)
    ctx = FieldCtx(pub.eta, pub.modulus)
    y = encrypt(pub, [1, 0, 0, 1] + [0] * 6)
    text = io.write_ciphertext(ctx, y)
    assert io.read_ciphertext(ctx, text, pub.k) == tuple(y)
    with pytest.raises(ParseError):
        io.read_ciphertext(ctx, text, pub.k + 1)
    with pytest.raises(ParseError):
        io.read_ciphertext(ctx, "x" + text[1:], pub.k)


def test_report_roundtrip():
    fields = [("kind", "autgroup"), ("p", 5), ("order", 25)]
    elems = [(Perm((1, 2, 0)), Perm((0, 1, 2, 3)))]
    text = io.write_report(fields, elems)
    back_fields, back_elems = io.read_report(text)
    assert back_fields == {"kind": "autgroup", "p": "5", "order": "25"}
    assert back_elems == elems
    assert io.write_report(back_fields.items(), back_elems) == text
    assert io.read_report(io.write_report(fields))[1] == []


def test_report_rejections():
    with pytest.raises(ParseError):
        io.read_report("QCREP v2\nkind: x\n")
    with pytest.raises(ParseError):
        io.read_report("QCREP v1\nno-separator\n")
    with pytest.raises(ParseError):
        io.read_report("QCREP v1\nelem: 0 1 2\n")
    with pytest.raises(ParseError):
        io.read_report("QCREP v1\nelem: 0 1 | 1 1\n")


# -------------------------------------------------------------------- cli


def test_cli_usage_errors(tmp_path):
    assert main(["frobnicate"]) == 2
    assert main([]) == 2
    assert main(["validate", str(tmp_path / "missing.qcm")]) == 2


def test_cli_validate(tmp_path, c512):
    mat = tmp_path / "m.qcm"
    mat.write_text(io.write_matrix(c512))
    rep = tmp_path / "r.qcr"
    # strict check fails without the waiver: condition v needs p > 30
    assert main(["validate", str(mat), "-o", str(rep)]) == 1
    fields, _ = io.read_report(rep.read_text())
    assert fields["cond_v"] == "fail" and fields["ok"] == "false"
    assert main(["validate", str(mat), "--desk-scale", "-o", str(rep)]) == 0
    fields, _ = io.read_report(rep.read_text())
    assert fields["ok"] == "true" and fields["cond_v"] == "waived"

    flat = BlockCirculant.from_rows(FieldCtx(2), 5, 1, 2, [(1, 1, 1, 1, 1)])
    mat.write_text(io.write_matrix(flat))
    assert main(["validate", str(mat), "--desk-scale", "-o", str(rep)]) == 1
    fields, _ = io.read_report(rep.read_text())
    assert fields["cond_ii"] == "fail" and "witness_ii" in fields


def test_cli_validate_variant(tmp_path):
    c = sample_variant(5, 2, 4, 2, seed=1)
    mat = tmp_path / "m.qcm"
    mat.write_text(io.write_matrix(c))
    args = ["validate", str(mat), "--desk-scale", "--variant", "-o", "-"]
    # m1/p = 0.4 sits above the default threshold but below 0.5
    assert main(args) == 1
    assert main(args[:-2] + ["--threshold", "0.5", "-o", "-"]) == 0


def test_cli_search_deterministic(tmp_path, monkeypatch):
    a, b, c = (tmp_path / name for name in ("a", "b", "c"))
    assert main(["search", "5", "1", "2", "2", "--seed", "5", "-o", str(a)]) == 0
    assert main(["search", "5", "1", "2", "2", "--seed", "5", "-o", str(b)]) == 0
    assert a.read_bytes() == b.read_bytes()
    monkeypatch.setenv("QCNIED_SEED", "5")
    assert main(["search", "5", "1", "2", "2", "-o", str(c)]) == 0
    assert c.read_bytes() == a.read_bytes()
    monkeypatch.setenv("QCNIED_SEED", "zzz")
    assert main(["search", "5", "1", "2", "2", "-o", str(c)]) == 2
    # composite p is a domain refusal, not a parse problem
    monkeypatch.delenv("QCNIED_SEED")
    assert main(["search", "9", "1", "2", "2"]) == 1


def test_cli_key_pipeline(tmp_path, capsys, c512):
    mat, priv_p, pub_p = (tmp_path / n for n in ("m.qcm", "sk", "pk"))
    ct, out = tmp_path / "ct", tmp_path / "out"
    mat.write_text(io.write_matrix(c512))
    assert main(["keygen", str(mat), "--seed", "9",
                 "--priv", str(priv_p), "--pub", str(pub_p)]) == 0
    assert capsys.readouterr().out == "e: 4\n"

    assert main(["encrypt", str(pub_p), "--support", "0,3", "-o", str(ct)]) == 0
    pub = io.read_public_key(pub_p.read_text())
    y = encrypt(pub, [1, 0, 0, 1, 0, 0, 0, 0, 0, 0])
    assert ct.read_text() == io.write_ciphertext(FieldCtx(2), y)

    assert main(["decrypt", str(priv_p), str(ct), "-o", str(out)]) == 0
    assert out.read_text() == "0,3\n"

    # library keygen with the same seed produces the same key files
    priv, pub2, cap = keypair(c512)
    assert priv_p.read_text() == io.write_private_key(priv, cap.e)
    assert pub_p.read_text() == io.write_public_key(pub2)


def test_cli_encrypt_rejections(tmp_path, capsys, c512):
    mat, priv_p, pub_p = (tmp_path / n for n in ("m.qcm", "sk", "pk"))
    mat.write_text(io.write_matrix(c512))
    main(["keygen", str(mat), "--seed", "9", "--priv", str(priv_p), "--pub", str(pub_p)])
    capsys.readouterr()
    for support in ("0,0", "abc", "12", "-1"):
        assert main(["encrypt", str(pub_p), "--support", support]) == 2
    # five indices exceed the capacity e = 4: domain failure
    assert main(["encrypt", str(pub_p), "--support", "0,1,2,3,4"]) == 1


def test_cli_autgroup_and_bound(tmp_path):
    c = sample_compliant(5, 1, 2, 2, seed=1)
    mat, rep, brep = (tmp_path / n for n in ("m.qcm", "g.qcr", "b.qcr"))
    mat.write_text(io.write_matrix(c))
    assert main(["autgroup", str(mat), "-o", str(rep)]) == 0
    fields, elems = io.read_report(rep.read_text())
    assert fields["order"] == "5" and len(elems) == 5
    assert fields["surveillance"] == "clear"

    assert main(["bound", "--report", str(rep), "-o", str(brep)]) == 0
    bf, _ = io.read_report(brep.read_text())
    want = dk_bound(stab_full(c))
    assert bf["mode"] == "exact" and bf["h_order"] == "5"
    assert float(bf["ln_dk"]) == pytest.approx(want.dk_log, rel=1e-12)
    assert int(bf["max_c"]) == want.max_c


def test_cli_autgroup_surveillance_trip(tmp_path):
    fano = BlockCirculant.from_rows(FieldCtx(2), 7, 1, 2, [FANO_ROW])
    mat, rep = tmp_path / "m.qcm", tmp_path / "g.qcr"
    mat.write_text(io.write_matrix(fano))
    assert main(["autgroup", str(mat), "-o", str(rep)]) == 3
    fields, elems = io.read_report(rep.read_text())
    assert fields["classification"] == "exceptional"
    assert fields["surveillance"].startswith("tripped")
    assert fields["order"] == "168" and len(elems) == 168


def test_cli_bound_envelope_and_sweep(tmp_path):
    rep = tmp_path / "b.qcr"
    assert main(["bound", "--envelope", "--p", "31", "-o", str(rep)]) == 0
    fields, _ = io.read_report(rep.read_text())
    assert fields["mode"] == "envelope"
    assert (fields["k"], fields["n"], fields["h_order"]) == ("31", "62", "961")
    assert fields["max_c"] == "5"
    assert main(["bound", "--envelope"]) == 2  # --p is mandatory here

    csv = tmp_path / "sweep.csv"
    assert main(["sweep", "--p", "7,31", "-o", str(csv)]) == 0
    lines = csv.read_text()[:-1].split("\n")
    assert lines[0] == "p,m1,m2,k,n,h_order,ln_s0,ln_s1,ln_dk,max_c"
    assert lines[1].startswith("7,1,2,7,14,49,") and lines[1].endswith(",-1")
    assert lines[2].startswith("31,1,2,31,62,961,") and lines[2].endswith(",5")
    assert main(["sweep", "--p", ""]) == 2
