import numpy as np
import pytest

from bidal.nn import (
    ContractViolation,
    ParamSet,
    Tensor,
    conv2d_forward,
    conv_output_size,
    dense_forward,
    grad_check,
    mean_all,
    mul,
    sum_all,
)


def brute_force_conv(img, kernels, stride, padding):
    """Direct-summation cross-correlation oracle (no im2col)."""
    b, h, w, c_in = img.shape
    k = kernels.shape[0]
    c_out = kernels.shape[3]
    hp = np.pad(img, ((0, 0), (padding, padding), (padding, padding), (0, 0)))
    oh = conv_output_size(h, k, stride, padding)
    ow = conv_output_size(w, k, stride, padding)
    out = np.zeros((b, oh, ow, c_out), dtype=np.float64)
    for bi in range(b):
        for i in range(oh):
            for j in range(ow):
                patch = hp[bi, i * stride:i * stride + k, j * stride:j * stride + k, :]
                for co in range(c_out):
                    out[bi, i, j, co] = np.sum(patch * kernels[:, :, :, co])
    return out


class TestDense:
    def test_identity_weights(self):
        y = dense_forward(Tensor([[1.0, 2.0]]), Tensor(np.eye(2)), Tensor([0.0, 0.0]))
        np.testing.assert_allclose(y.data, [[1.0, 2.0]])

    def test_zero_weights_pass_bias(self):
        y = dense_forward(Tensor([[1.0, 2.0]]), Tensor(np.zeros((2, 2))),
                          Tensor([3.0, 4.0]))
        np.testing.assert_allclose(y.data, [[3.0, 4.0]])

    def test_hand_multiply(self):
        # [[1,2]] @ [[1,0],[1,1]] = [[3,2]]
        y = dense_forward(Tensor([[1.0, 2.0]]),
                          Tensor([[1.0, 0.0], [1.0, 1.0]]), Tensor([0.0, 0.0]))
        np.testing.assert_allclose(y.data, [[3.0, 2.0]])

    def test_shape_mismatch(self):
        with pytest.raises(ContractViolation):
            dense_forward(Tensor(np.ones((1, 3))), Tensor(np.ones((2, 2))),
                          Tensor(np.ones(2)))

    def test_deterministic_bitwise(self):
        rng = np.random.default_rng(0)
        x = rng.normal(size=(5, 7)).astype(np.float32)
        w = rng.normal(size=(7, 3)).astype(np.float32)
        b = rng.normal(size=3).astype(np.float32)
        y1 = dense_forward(Tensor(x), Tensor(w), Tensor(b)).data
        y2 = dense_forward(Tensor(x.copy()), Tensor(w.copy()), Tensor(b.copy())).data
        assert np.array_equal(y1, y2)


class TestConv2d:
    def test_identity_kernel(self):
        rng = np.random.default_rng(1)
        img = rng.random((2, 5, 5, 1)).astype(np.float32)
        k = np.ones((1, 1, 1, 1), dtype=np.float32)
        y = conv2d_forward(Tensor(img), Tensor(k), stride=1, padding=0)
        np.testing.assert_array_equal(y.data, img)

    def test_zero_kernel(self):
        img = np.ones((1, 4, 4, 2), dtype=np.float32)
        k = np.zeros((3, 3, 2, 4), dtype=np.float32)
        y = conv2d_forward(Tensor(img), Tensor(k))
        assert np.all(y.data == 0)

    def test_all_ones_summation(self):
        img = np.ones((1, 3, 3, 1), dtype=np.float32)
        k = np.ones((3, 3, 1, 1), dtype=np.float32)
        y = conv2d_forward(Tensor(img), Tensor(k))
        assert y.data.shape == (1, 1, 1, 1)
        assert y.data.ravel()[0] == 9.0

    @pytest.mark.parametrize("stride,padding", [(1, 0), (2, 0), (1, 1), (2, 1)])
    def test_matches_brute_force(self, stride, padding):
        rng = np.random.default_rng(7)
        img = rng.normal(size=(2, 6, 5, 3)).astype(np.float64)
        ker = rng.normal(size=(3, 3, 3, 4)).astype(np.float64)
        y = conv2d_forward(Tensor(img), Tensor(ker), stride, padding)
        expected = brute_force_conv(img, ker, stride, padding)
        np.testing.assert_allclose(y.data, expected, rtol=1e-10)

    def test_output_too_small_rejected(self):
        img = np.ones((1, 2, 2, 1), dtype=np.float32)
        ker = np.ones((3, 3, 1, 1), dtype=np.float32)
        with pytest.raises(ContractViolation):
            conv2d_forward(Tensor(img), Tensor(ker))

    def test_deterministic_bitwise(self):
        rng = np.random.default_rng(3)
        img = rng.normal(size=(2, 8, 8, 2)).astype(np.float32)
        ker = rng.normal(size=(3, 3, 2, 4)).astype(np.float32)
        y1 = conv2d_forward(Tensor(img), Tensor(ker), 2, 1).data
        y2 = conv2d_forward(Tensor(img.copy()), Tensor(ker.copy()), 2, 1).data
        assert np.array_equal(y1, y2)


class TestGradChecks:
    def test_quadratic(self):
        ps = ParamSet()
        ps.add("w", np.array([3.0], dtype=np.float64))

        def f(p):
            return sum_all(mul(p["w"], p["w"]))

        assert grad_check(f, ps) < 1e-6

    def test_constant_function(self):
        ps = ParamSet()
        ps.add("w", np.array([1.0, 2.0], dtype=np.float64))

        def f(p):
            return sum_all(mul(stopless_zero(p["w"]), p["w"]))

        # constant: loss independent of w
        def g(p):
            return Tensor(np.float64(4.0))

        assert grad_check(g, ps) == 0.0

    def test_dense_layer_gradients(self):
        rng = np.random.default_rng(0)
        ps = ParamSet()
        ps.add("W", rng.normal(size=(4, 3)))
        ps.add("b", rng.normal(size=3))
        x = Tensor(rng.normal(size=(2, 4)))

        def f(p):
            y = dense_forward(x, p["W"], p["b"])
            return mean_all(mul(y, y))

        assert grad_check(f, ps) < 1e-6

    def test_conv_layer_gradients(self):
        rng = np.random.default_rng(5)
        ps = ParamSet()
        ps.add("K", rng.normal(size=(3, 3, 2, 3)))
        img = Tensor(rng.normal(size=(2, 5, 5, 2)))

        def f(p):
            y = conv2d_forward(img, p["K"], stride=2, padding=1)
            return mean_all(mul(y, y))

        assert grad_check(f, ps) < 1e-6

    def test_requires_float64(self):
        ps = ParamSet()
        ps.add("w", np.ones(2, dtype=np.float32))
        with pytest.raises(ContractViolation):
            grad_check(lambda p: sum_all(p["w"]), ps)

    def test_epsilon_bounds(self):
        ps = ParamSet()
        ps.add("w", np.ones(2, dtype=np.float64))
        with pytest.raises(ContractViolation):
            grad_check(lambda p: sum_all(p["w"]), ps, epsilon=1e-2)


def stopless_zero(t):
    return t


def test_layer_primitives_random_property_sweep():
    # randomized small shapes, 64-bit: analytic vs numeric under 1e-4
    rng = np.random.default_rng(42)
    for trial in range(30):
        n_in = int(rng.integers(1, 5))
        n_out = int(rng.integers(1, 4))
        batch = int(rng.integers(1, 3))
        ps = ParamSet()
        ps.add("W", rng.normal(size=(n_in, n_out)))
        ps.add("b", rng.normal(size=n_out))
        x = Tensor(rng.normal(size=(batch, n_in)))

        def f(p):
            from bidal.nn import elu
            y = elu(dense_forward(x, p["W"], p["b"]))
            return mean_all(mul(y, y))

        assert grad_check(f, ps) < 1e-4
