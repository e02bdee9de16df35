import numpy as np
import pytest

from bidal.nn import (
    ContractViolation,
    Tensor,
    add,
    concat,
    elu,
    matmul,
    mean_all,
    mul,
    no_grad,
    scale,
    stop_gradient,
    sub,
    sum_all,
    tanh,
)


def test_backward_rejects_non_scalar():
    x = Tensor(np.ones((2, 2)), requires_grad=True)
    y = scale(x, 2.0)
    with pytest.raises(ContractViolation):
        y.backward()


def test_sum_of_linear_map_gradient():
    # loss = sum(x @ W) with x = [1, 1] puts [1, 1] in every column of dW
    x = Tensor([[1.0, 1.0]])
    w = Tensor(np.arange(6, dtype=np.float32).reshape(2, 3), requires_grad=True)
    loss = sum_all(matmul(x, w))
    loss.backward()
    np.testing.assert_allclose(w.grad, np.ones((2, 3)))


def test_parameter_off_loss_path_has_no_grad():
    x = Tensor([[1.0, 2.0]], requires_grad=True)
    unused = Tensor([[5.0]], requires_grad=True)
    loss = sum_all(x)
    loss.backward()
    assert unused.grad is None
    np.testing.assert_allclose(x.grad, np.ones((1, 2)))


def test_stop_gradient_blocks_path():
    # loss = sum(x^2 * w): dL/dx = 0 under stop-gradient, dL/dw != 0
    x = Tensor([2.0, 3.0], requires_grad=True)
    w = Tensor([1.0, 1.0], requires_grad=True)
    xs = stop_gradient(x)
    loss = sum_all(mul(mul(xs, xs), w))
    loss.backward()
    assert x.grad is None
    np.testing.assert_allclose(w.grad, [4.0, 9.0])


def test_grad_accumulates_over_shared_subexpression():
    x = Tensor([3.0], requires_grad=True)
    y = mul(x, x)  # x used twice
    loss = sum_all(y)
    loss.backward()
    np.testing.assert_allclose(x.grad, [6.0])


def test_mul_sub_backward_values():
    a = Tensor([1.0, 4.0], requires_grad=True)
    b = Tensor([2.0, 1.0], requires_grad=True)
    loss = sum_all(mul(sub(a, b), sub(a, b)))
    loss.backward()
    np.testing.assert_allclose(a.grad, [-2.0, 6.0])
    np.testing.assert_allclose(b.grad, [2.0, -6.0])


def test_concat_backward_splits_gradient():
    a = Tensor(np.ones((2, 2)), requires_grad=True)
    b = Tensor(np.ones((2, 3)), requires_grad=True)
    c = concat([a, b], axis=1)
    loss = sum_all(mul(c, c))
    loss.backward()
    assert a.grad.shape == (2, 2)
    assert b.grad.shape == (2, 3)
    np.testing.assert_allclose(a.grad, 2 * np.ones((2, 2)))


def test_bias_add_broadcast_backward():
    x = Tensor(np.zeros((4, 3)), requires_grad=True)
    b = Tensor(np.zeros(3), requires_grad=True)
    loss = sum_all(add(x, b))
    loss.backward()
    np.testing.assert_allclose(b.grad, [4.0, 4.0, 4.0])


def test_mean_all_value_and_grad():
    x = Tensor(np.array([1.0, 2.0, 3.0, 6.0]), requires_grad=True)
    m = mean_all(x)
    assert m.item() == pytest.approx(3.0)
    m.backward()
    np.testing.assert_allclose(x.grad, 0.25 * np.ones(4))


def test_elu_values():
    x = Tensor(np.array([0.0, 2.0, -1.0]))
    y = elu(x)
    assert y.data[0] == 0.0
    assert y.data[1] == 2.0
    assert y.data[2] == pytest.approx(np.expm1(-1.0), abs=1e-6)  # ~ -0.63212


def test_elu_continuous_and_monotone_on_grid():
    grid = np.linspace(-5, 5, 2001, dtype=np.float64)
    y = elu(Tensor(grid)).data
    assert np.all(np.diff(y) > 0)
    near0 = elu(Tensor(np.array([-1e-9, 0.0, 1e-9], dtype=np.float64))).data
    assert abs(near0[0] - near0[2]) < 1e-8


def test_tanh_backward():
    x = Tensor([0.5], requires_grad=True)
    loss = sum_all(tanh(x))
    loss.backward()
    np.testing.assert_allclose(x.grad, [1 - np.tanh(0.5) ** 2], rtol=1e-6)


def test_no_grad_suppresses_graph():
    x = Tensor([1.0], requires_grad=True)
    with no_grad():
        y = scale(x, 3.0)
    assert y._parents == ()
    assert not y.requires_grad


def test_shape_mismatch_raises():
    with pytest.raises(ContractViolation):
        matmul(Tensor(np.ones((2, 3))), Tensor(np.ones((2, 3))))
    with pytest.raises(ContractViolation):
        sub(Tensor(np.ones(2)), Tensor(np.ones(3)))


def test_float64_mode_preserved():
    x = Tensor(np.ones(3, dtype=np.float64))
    assert elu(x).data.dtype == np.float64
    assert scale(x, 2.0).data.dtype == np.float64
