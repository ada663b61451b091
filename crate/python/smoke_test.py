"""Smoke test for the ramanujan_pi extension module.

Build and install first:
    pip install --no-build-isolation -e crates/python
then run:
    python python/smoke_test.py
"""

import json
from fractions import Fraction

import mpmath

import ramanujan_pi as rp

mpmath.mp.dps = 120


def close(a, b, places):
    return abs(mpmath.mpf(a) - mpmath.mpf(b)) < mpmath.mpf(10) ** -places


def main():
    digits = rp.compute_pi("ramanujan58", 100)
    assert digits == mpmath.nstr(mpmath.pi, 120, strip_zeros=False)[:102], digits
    assert rp.compute_pi("chudnovsky", 500) == rp.compute_pi("agm", 500)

    specs = rp.catalog()
    assert len(specs) == 10
    r58 = rp.lookup("ramanujan58")
    assert (r58.A, r58.B) == ("1103", "26390")
    assert abs(r58.digits_per_term - 7.98) < 0.01
    assert json.loads(r58.to_json())["family"] == r58.family
    assert close(r58.partial_sum(20, 100), 1 / mpmath.pi, 95)
    try:
        rp.lookup("leibniz")
    except ValueError:
        pass
    else:
        raise AssertionError("unknown key accepted")

    # K(k) = (pi/2) 2F1(1/2, 1/2; 1; k^2)
    k = mpmath.mpf("0.3")
    assert close(rp.ellip_k("0.3", 100), mpmath.ellipk(k**2), 95)
    assert close(rp.ellip_e("0.3", 100), mpmath.ellipe(k**2), 95)

    # k_1 = 1/sqrt 2, and K'/K = sqrt 58 at k_58
    assert close(rp.lambda_star("1", 100), 1 / mpmath.sqrt(2), 95)
    k58 = mpmath.mpf(rp.lambda_star("58", 100))
    ratio = mpmath.ellipk(1 - k58**2) / mpmath.ellipk(k58**2)
    assert close(ratio, mpmath.sqrt(58), 90)

    a, b = rp.fundamental_unit(58)
    assert (Fraction(a), Fraction(b)) == (99, 13)
    assert rp.recover_coefficients("xN", 58, "ramanujan58", 100)[:2] == ("1103", "26390")

    checks = rp.verify(40)
    failed = [name for name, ok, _ in checks if not ok]
    assert not failed, failed
    try:
        rp.verify(16)
    except ValueError as e:
        assert "precision too low" in str(e)
    else:
        raise AssertionError("low precision accepted")

    print(f"ok: {len(specs)} series, {len(checks)} checks")


if __name__ == "__main__":
    main()
