import pytest

from variadic.language import (
    Signature,
    SignatureError,
    load_signature,
    parse_signature,
    std_signature,
    validate,
)


def test_empty_signature_is_ok():
    assert validate(Signature.build()) == []


def test_function_and_predicate_clash():
    sig = Signature.build(fixed_fns={"p": 2}, predicates={"p": 1})
    msgs = [v.message for v in validate(sig)]
    assert "p is both function and predicate" in msgs
    assert all(v.symbol == "p" for v in validate(sig))


def test_two_arities():
    sig = Signature.build(fixed_fns={"f": 2}).merge(Signature.build(fixed_fns={"f": 3}))
    assert "f has arities 2 and 3" in [v.message for v in validate(sig)]


def test_std_signature():
    sig = std_signature()
    assert validate(sig) == []
    assert sig.variadic_fns == {"G", "S"}
    assert sig.fixed_fns["d"] == 2
    assert sig.fixed_fns == {"+": 2, "*": 2, "d": 2, "<=": 2}
    assert sig.predicates == {}


def test_undeclared_identifiers_are_variables():
    sig = std_signature()
    assert sig.is_variable("x")
    assert sig.is_variable("x1")
    assert not sig.is_variable("G")
    assert not sig.is_variable("forall")


def test_validate_is_order_independent():
    a = Signature.build(fixed_fns={"f": 1, "g": 2}, variadic_fns=["h"], predicates={"f": 1})
    b = Signature.build(predicates={"f": 1}, variadic_fns=["h"], fixed_fns={"g": 2, "f": 1})
    va = sorted(map(str, validate(a)))
    assert va == sorted(map(str, validate(b)))
    assert va == sorted(map(str, validate(a)))


def test_bad_arities_reported():
    assert validate(Signature.build(fixed_fns={"f": 0}))
    assert validate(Signature.build(predicates={"p": 0}))
    assert validate(Signature.build(nary_by_variadic_fns={"t": 0})) == []


def test_keyword_names_rejected():
    assert validate(Signature.build(fixed_fns={"forall": 1}))


def test_signature_file_roundtrip(tmp_path):
    text = "fn f 2\nvariadic G\nnaryvariadic tau 1\npred P 1\nconst c\n"
    sig = parse_signature(text)
    assert sig.fixed_fns == {"f": 2}
    assert sig.variadic_fns == {"G"}
    assert sig.nary_by_variadic_fns == {"tau": 1}
    assert sig.predicates == {"P": 1}
    assert sig.named_constants == {"c"}
    path = tmp_path / "s.sig"
    path.write_text(sig.to_text(), encoding="utf-8")
    assert load_signature(path) == sig


def test_signature_file_errors():
    with pytest.raises(SignatureError):
        parse_signature("fun f 2")
    with pytest.raises(SignatureError):
        parse_signature("fn f")
    with pytest.raises(SignatureError):
        parse_signature("fn f two")


def test_comments_and_blank_lines():
    assert parse_signature("# standard sum\n\nvariadic S  # sum\n").variadic_fns == {"S"}
