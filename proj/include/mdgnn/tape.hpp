#pragma once

#include <cstddef>
#include <cstdint>
#include <stdexcept>
#include <vector>

#include "mdgnn/matrix.hpp"

namespace mdgnn {

/// Handle to a value recorded on a Tape.
struct VarId {
    std::size_t index = 0;
};

/// Reverse-mode automatic differentiation over a computation tape.
///
/// A tape is append-only during the forward pass: every recorded node keeps
/// its operation kind, parent indices, and forward value, so parents always
/// precede children. backward() seeds the root adjoint with 1 and sweeps the
/// tape once in strict reverse order, accumulating adjoints into every node.
/// Leaves that do not influence the root end up with a zero gradient.
///
/// A tape is single-writer: one forward/backward pair per tape instance.
class Tape {
public:
    VarId input(Matrix value) { return push(OpKind::input, npos, npos, std::move(value)); }

    VarId matmul(VarId a, VarId b) {
        return push(OpKind::matmul, a.index, b.index, mdgnn::matmul(value(a), value(b)));
    }

    VarId add(VarId a, VarId b) {
        return push(OpKind::add, a.index, b.index, mdgnn::add(value(a), value(b)));
    }

    VarId sub(VarId a, VarId b) {
        return push(OpKind::sub, a.index, b.index, mdgnn::sub(value(a), value(b)));
    }

    VarId mul(VarId a, VarId b) {
        return push(OpKind::mul, a.index, b.index, mdgnn::hadamard(value(a), value(b)));
    }

    VarId sigmoid(VarId a) {
        return push(OpKind::sigmoid, a.index, npos, mdgnn::sigmoid(value(a)));
    }

    VarId tanh(VarId a) { return push(OpKind::tanh, a.index, npos, mdgnn::tanh(value(a))); }

    VarId relu(VarId a) { return push(OpKind::relu, a.index, npos, mdgnn::relu(value(a))); }

    VarId concat_rows(VarId a, VarId b) {
        return push(OpKind::concat_rows, a.index, b.index,
                    mdgnn::concat_rows(value(a), value(b)));
    }

    VarId reshape(VarId a, std::size_t rows, std::size_t cols) {
        return push(OpKind::reshape, a.index, npos, value(a).reshaped(rows, cols));
    }

    /// Sum of all entries as a 1x1 matrix.
    VarId sum(VarId a) {
        Matrix s(1, 1);
        s(0, 0) = mdgnn::sum(value(a));
        return push(OpKind::sum, a.index, npos, std::move(s));
    }

    VarId scale(VarId a, double factor) {
        VarId id = push(OpKind::scale, a.index, npos, mdgnn::scale(value(a), factor));
        nodes_[id.index].aux = factor;
        return id;
    }

    const Matrix& value(VarId id) const { return nodes_[id.index].value; }

    const Matrix& grad(VarId id) const {
        if (!swept_) throw std::logic_error("Tape::grad: backward() has not run");
        return nodes_[id.index].adjoint;
    }

    std::size_t size() const { return nodes_.size(); }

    void reset() {
        nodes_.clear();
        swept_ = false;
    }

    /// Propagates d(root)/d(node) into every node's adjoint. The root must
    /// be a scalar (1x1) node.
    void backward(VarId root) {
        const Matrix& out = value(root);
        if (out.rows() != 1 || out.cols() != 1) {
            throw std::invalid_argument("Tape::backward: root must be scalar, got " +
                                        out.shape_str());
        }
        for (Node& n : nodes_) n.adjoint = Matrix(n.value.rows(), n.value.cols());
        nodes_[root.index].adjoint(0, 0) = 1.0;

        for (std::size_t i = root.index + 1; i-- > 0;) {
            Node& n = nodes_[i];
            const Matrix& g = n.adjoint;
            switch (n.op) {
            case OpKind::input:
                break;
            case OpKind::matmul:
                // c = a.b  =>  da += g.b^T, db += a^T.g
                add_in_place(nodes_[n.a].adjoint, matmul_nt(g, nodes_[n.b].value));
                add_in_place(nodes_[n.b].adjoint, matmul_tn(nodes_[n.a].value, g));
                break;
            case OpKind::add:
                add_in_place(nodes_[n.a].adjoint, g);
                add_in_place(nodes_[n.b].adjoint, g);
                break;
            case OpKind::sub:
                add_in_place(nodes_[n.a].adjoint, g);
                add_in_place(nodes_[n.b].adjoint, negate(g));
                break;
            case OpKind::mul:
                add_in_place(nodes_[n.a].adjoint, hadamard(g, nodes_[n.b].value));
                add_in_place(nodes_[n.b].adjoint, hadamard(g, nodes_[n.a].value));
                break;
            case OpKind::sigmoid: {
                // dy/dx = y(1 - y), from the cached output
                Matrix d(n.value.rows(), n.value.cols());
                for (std::size_t k = 0; k < d.size(); ++k) {
                    const double y = n.value.data()[k];
                    d.data()[k] = g.data()[k] * y * (1.0 - y);
                }
                add_in_place(nodes_[n.a].adjoint, d);
                break;
            }
            case OpKind::tanh: {
                Matrix d(n.value.rows(), n.value.cols());
                for (std::size_t k = 0; k < d.size(); ++k) {
                    const double y = n.value.data()[k];
                    d.data()[k] = g.data()[k] * (1.0 - y * y);
                }
                add_in_place(nodes_[n.a].adjoint, d);
                break;
            }
            case OpKind::relu: {
                const Matrix& x = nodes_[n.a].value;
                Matrix d(x.rows(), x.cols());
                for (std::size_t k = 0; k < d.size(); ++k) {
                    d.data()[k] = x.data()[k] > 0.0 ? g.data()[k] : 0.0;
                }
                add_in_place(nodes_[n.a].adjoint, d);
                break;
            }
            case OpKind::concat_rows: {
                const std::size_t ra = nodes_[n.a].value.rows();
                const std::size_t rb = nodes_[n.b].value.rows();
                add_in_place(nodes_[n.a].adjoint, slice_rows(g, 0, ra));
                add_in_place(nodes_[n.b].adjoint, slice_rows(g, ra, rb));
                break;
            }
            case OpKind::reshape: {
                const Matrix& parent = nodes_[n.a].value;
                add_in_place(nodes_[n.a].adjoint, g.reshaped(parent.rows(), parent.cols()));
                break;
            }
            case OpKind::sum: {
                const double gs = g(0, 0);
                Matrix d(nodes_[n.a].value.rows(), nodes_[n.a].value.cols());
                for (double& x : d.data()) x = gs;
                add_in_place(nodes_[n.a].adjoint, d);
                break;
            }
            case OpKind::scale:
                add_in_place(nodes_[n.a].adjoint, mdgnn::scale(g, n.aux));
                break;
            }
        }
        swept_ = true;
    }

private:
    enum class OpKind : std::uint8_t {
        input,
        matmul,
        add,
        sub,
        mul,
        sigmoid,
        tanh,
        relu,
        concat_rows,
        reshape,
        sum,
        scale,
    };

    static constexpr std::size_t npos = static_cast<std::size_t>(-1);

    struct Node {
        OpKind op;
        std::size_t a;
        std::size_t b;
        double aux = 0.0;
        Matrix value;
        Matrix adjoint;
    };

    VarId push(OpKind op, std::size_t a, std::size_t b, Matrix value) {
        nodes_.push_back(Node{op, a, b, 0.0, std::move(value), Matrix()});
        return VarId{nodes_.size() - 1};
    }

    std::vector<Node> nodes_;
    bool swept_ = false;
};

} // namespace mdgnn
