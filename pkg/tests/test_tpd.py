import json

import numpy as np
import pytest

from socs_fec import channel, codes, simulate, tpd


def _eh8_params():
    code = codes.build_extended_hamming(3)
    return code, codes.ProductCodeParams(code)


def _flat_schedule(kind, iterations=4):
    count = 2 * iterations - 1
    beta = [0.5] * count if kind in ("cp-classic", "cp-optimized", "socs-beta") \
        else None
    return tpd.HalfIterationSchedule([0.5] * count, beta)


def test_config_validation():
    sched = tpd.HalfIterationSchedule([0.5] * 5)
    with pytest.raises(ValueError):
        tpd.TpdConfig(kind="socs-testwords", iterations=4, schedule=sched)
    with pytest.raises(ValueError):
        tpd.TpdConfig(kind="socs-beta", iterations=3, schedule=sched)  # no beta
    with pytest.raises(ValueError):
        tpd.TpdConfig(kind="nope", iterations=3,
                      schedule=tpd.HalfIterationSchedule([0.5] * 5))
    with pytest.raises(ValueError):
        tpd.HalfIterationSchedule([0.5] * 5, [0.5] * 3)


@pytest.mark.parametrize("kind", tpd.DECODER_KINDS)
def test_noiseless_decode(kind):
    code, params = _eh8_params()
    rng = np.random.default_rng(0)
    msg = rng.integers(0, 2, (code.k, code.k), dtype=np.uint8)
    cw = simulate.product_encode(code, msg)
    l_ch = channel.LLR_CLIP * (1.0 - 2.0 * cw.astype(np.float64))
    cfg = tpd.TpdConfig(kind=kind, chase_p=3, schedule=_flat_schedule(kind),
                        radius=1)
    result = tpd.tpd_decode(params, l_ch, cfg)
    assert np.array_equal(result.hard, cw)
    assert result.empty_list_fraction == 0.0


@pytest.mark.parametrize("kind", ["cp-classic", "socs-ball-testwords"])
def test_moderate_noise_rows_and_columns_are_codewords(kind):
    code, params = _eh8_params()
    model = channel.ebn0_to_sigma(6.0, params.rate)
    cfg = tpd.TpdConfig(kind=kind, chase_p=3, schedule=_flat_schedule(kind),
                        radius=1)
    rng = np.random.default_rng(1)
    scale = model.sigma2 / 2 if kind in tpd.ANALOG_DOMAIN_KINDS else 1.0
    for _ in range(10):
        cw = np.zeros((code.n, code.n), dtype=np.uint8)
        y = channel.transmit(cw, model, rng)
        l_ch = channel.channel_llr(y, model) * scale
        result = tpd.tpd_decode(params, l_ch, cfg)
        if result.empty_list_fraction == 0.0:
            for row in result.hard:
                assert codes.is_codeword(code, row)


def test_trace_shape_and_final_orientation():
    code, params = _eh8_params()
    rng = np.random.default_rng(2)
    model = channel.ebn0_to_sigma(4.0, params.rate)
    y = channel.transmit(np.zeros((8, 8), dtype=np.uint8), model, rng)
    l_ch = channel.channel_llr(y, model)
    cfg = tpd.TpdConfig(kind="socs-ball-testwords", chase_p=3, radius=1,
                        schedule=_flat_schedule("socs-ball-testwords"),
                        collect_trace=True)
    result = tpd.tpd_decode(params, l_ch, cfg)
    assert len(result.l_app_trace) == 7
    assert all(t.shape == (8, 8) for t in result.l_app_trace)
    assert 0.0 <= result.empty_list_fraction <= 1.0


def test_extrinsic_definition_single_half():
    # after one row half iteration, the stored row extrinsic must equal
    # alpha * (l_app - l_in) with l_in = clipped channel LLRs
    code, params = _eh8_params()
    rng = np.random.default_rng(3)
    l_ch = rng.normal(0, 2, (8, 8))
    sched = tpd.HalfIterationSchedule([0.7] * 7)
    cfg = tpd.TpdConfig(kind="socs-testwords", chase_p=3, schedule=sched)
    e_row, e_col, _, _, l_app = tpd.run_soft_half_iterations(params, l_ch, cfg, 1)
    assert not e_col.any()
    assert np.allclose(e_row, 0.7 * (l_app - channel.clip_llr(l_ch)))


def test_default_schedules_ship_for_both_codes():
    kinds = ["cp-classic", "cp-optimized", "socs-beta", "socs-ball-testwords",
             "socs-ball-list", "socs-testwords"]
    for label in ("eh256", "ebch256"):
        for kind in kinds:
            obj, sched = tpd.default_schedule(label, kind)
            assert sched.count == 7
            assert "design_ebn0_db" in obj
            if kind in ("cp-classic", "cp-optimized", "socs-beta"):
                assert sched.beta is not None and len(sched.beta) == 7
    with pytest.raises(ValueError):
        tpd.default_schedule("eh8", "cp-classic")


def test_classic_pyndiah_schedule_values():
    obj, sched = tpd.default_schedule("eh256", "cp-classic")
    assert sched.alpha == [0.2, 0.3, 0.5, 0.7, 0.9, 1.0, 1.0]
    assert sched.beta == [0.2, 0.4, 0.6, 0.8, 1.0, 1.0, 1.0]


def test_schedule_file_round_trip(tmp_path):
    path = tmp_path / "sched.json"
    obj = {"decoder": "socs-beta", "alpha": [0.5] * 7, "beta": [0.1] * 7}
    path.write_text(json.dumps(obj))
    loaded, sched = tpd.load_schedule_file(path)
    assert sched.alpha == [0.5] * 7
    assert sched.beta == [0.1] * 7
    assert loaded["decoder"] == "socs-beta"


def test_default_radius():
    assert tpd.default_radius("eh256", "socs-ball-testwords") == 1
    assert tpd.default_radius("ebch256", "socs-ball-testwords") == 2
    assert tpd.default_radius("eh256", "cp-classic") == 0
