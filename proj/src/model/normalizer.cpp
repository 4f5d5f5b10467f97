#include "feef/model/normalizer.hpp"

#include <cmath>

namespace feef::model {

Normalizer Normalizer::identity(std::size_t state_dim, std::size_t action_dim)
{
    const auto n = static_cast<Eigen::Index>(state_dim + action_dim);
    const auto s = static_cast<Eigen::Index>(state_dim);
    return {Vector::Zero(n), Vector::Ones(n), Vector::Ones(s), Vector::Zero(s), Vector::Ones(s)};
}

namespace {

void moments(const Matrix& columns, Vector& mean, Vector& std)
{
    const double n = static_cast<double>(columns.cols());
    mean = columns.rowwise().sum() / n;
    std = ((columns.colwise() - mean).array().square().rowwise().sum() / n).sqrt().matrix();
    std = std.cwiseMax(Normalizer::kStdFloor);
}

} // namespace

Normalizer Normalizer::fit(const ReplayBuffer& buffer)
{
    require(!buffer.empty(), "Normalizer::fit: empty buffer");
    const auto ds = static_cast<Eigen::Index>(buffer.state_dim());
    const auto da = static_cast<Eigen::Index>(buffer.action_dim());
    const auto n = static_cast<Eigen::Index>(buffer.size());

    Matrix inputs(ds + da, n);
    Matrix deltas(ds, n);
    Matrix next(ds, n);
    for (Eigen::Index i = 0; i < n; ++i) {
        const auto& t = buffer[static_cast<std::size_t>(i)];
        inputs.col(i).head(ds) = t.state;
        inputs.col(i).tail(da) = t.action;
        deltas.col(i) = t.next_state - t.state;
        next.col(i) = t.next_state;
    }

    Normalizer norm;
    moments(inputs, norm.input_mean, norm.input_std);
    moments(next, norm.reward_input_mean, norm.reward_input_std);
    norm.delta_scale = (deltas.array().square().rowwise().sum() / static_cast<double>(n)).sqrt().matrix();
    norm.delta_scale = norm.delta_scale.cwiseMax(kStdFloor);
    return norm;
}

Matrix Normalizer::transition_inputs(const Matrix& states, const Matrix& actions) const
{
    require(static_cast<std::size_t>(states.rows()) == state_dim() &&
                static_cast<std::size_t>(actions.rows()) == action_dim() && states.cols() == actions.cols(),
            "Normalizer: state/action dimension mismatch");
    Matrix x(states.rows() + actions.rows(), states.cols());
    x.topRows(states.rows()) = states;
    x.bottomRows(actions.rows()) = actions;
    x.colwise() -= input_mean;
    x.array().colwise() /= input_std.array();
    return x;
}

Matrix Normalizer::reward_inputs(const Matrix& states) const
{
    require(static_cast<std::size_t>(states.rows()) == state_dim(), "Normalizer: state dimension mismatch");
    Matrix x = states.colwise() - reward_input_mean;
    x.array().colwise() /= reward_input_std.array();
    return x;
}

} // namespace feef::model
