import plateflow.plate as pl
from plateflow.plate import verify


def failed_checks(results):
    return [result.name for result in results if not result.passed]


def test_default_suite():
    results = verify.run_checks()
    names = [result.name for result in results]
    assert names == [
        'basis',
        'quadrature_exactness',
        'assembly_vs_oracle',
        'flow_block',
        'skew_identity',
        'coercivity',
        'lambda1',
        'lift_identity',
        'nonlinear_residual',
    ]
    assert failed_checks(results) == []
    assert verify.all_passed(results)


def test_other_parameters():
    params = pl.PlateParameters(sigma=0.3, mu=0.5, p_prestress=2.0, s_stretch=0.5)
    assert verify.all_passed(verify.run_checks(n1=5, m2=1, params=params))


def test_flipped_corner_term():
    results = verify.run_checks(inject='flip_corner')
    assert not verify.all_passed(results)
    assert 'coercivity' in failed_checks(results)
    assert 'assembly_vs_oracle' in failed_checks(results)


def test_transposed_flow_gram():
    results = verify.run_checks(inject='transpose_y10')
    assert not verify.all_passed(results)
    assert 'skew_identity' in failed_checks(results)
    assert 'flow_block' in failed_checks(results)


def test_unknown_injection():
    try:
        verify.run_checks(inject='drop_mass')
        assert False
    except ValueError:
        assert True


def test_check_result():
    result = verify.CheckResult('example', 1e-14, 1e-12, 'detail')
    assert result.passed
    assert str(result).startswith('PASS')
    result = verify.CheckResult('example', 1e-3, 1e-12)
    assert not result.passed
    assert str(result).startswith('FAIL')
