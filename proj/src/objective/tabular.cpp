#include "feef/objective/tabular.hpp"

#include <cmath>
#include <limits>

#include "feef/math/softmax.hpp"

namespace feef::objective {

namespace {

constexpr double kRowTolerance = 1e-12;

void check_rows(const Matrix& m, const char* what)
{
    for (Eigen::Index r = 0; r < m.rows(); ++r) {
        require((m.row(r).array() >= 0.0).all(), std::string(what) + ": negative probability");
        require(std::abs(m.row(r).sum() - 1.0) <= kRowTolerance, std::string(what) + ": row does not sum to 1");
    }
}

double xlogy_ratio(double p, double q)
{
    if (p <= 0.0)
        return 0.0;
    if (q <= 0.0)
        return std::numeric_limits<double>::infinity();
    return p * std::log(p / q);
}

double entropy(const Vector& p)
{
    double h = 0.0;
    for (Eigen::Index i = 0; i < p.size(); ++i)
        if (p(i) > 0.0)
            h -= p(i) * std::log(p(i));
    return h;
}

Vector random_simplex(Rng& rng, Eigen::Index n)
{
    std::uniform_real_distribution<double> u(0.05, 1.0);
    Vector v(n);
    for (Eigen::Index i = 0; i < n; ++i)
        v(i) = u(rng);
    return v / v.sum();
}

} // namespace

void TabularToyModel::validate() const
{
    const auto np = parameter_prior.size();
    const auto no = preferred.size();
    require(np > 0 && no > 0 && !state_given.empty(), "TabularToyModel: empty table");
    require(observation_given.size() == static_cast<std::size_t>(np), "TabularToyModel: one observation table per parameter");
    const auto ns = observation_given.front().rows();
    check_rows(parameter_prior.transpose(), "parameter_prior");
    check_rows(preferred.transpose(), "preferred");
    for (const auto& m : state_given) {
        require(m.rows() == np && m.cols() == ns, "TabularToyModel: state table shape");
        check_rows(m, "state_given");
    }
    for (const auto& m : observation_given) {
        require(m.rows() == ns && m.cols() == no, "TabularToyModel: observation table shape");
        check_rows(m, "observation_given");
    }
    if (!generative_posterior.empty()) {
        require(generative_posterior.size() == static_cast<std::size_t>(no), "TabularToyModel: one posterior per observation");
        for (const auto& m : generative_posterior) {
            require(m.rows() == np && m.cols() == ns, "TabularToyModel: generative posterior shape");
            require((m.array() >= 0.0).all() && std::abs(m.sum() - 1.0) <= kRowTolerance,
                    "TabularToyModel: generative posterior must sum to 1");
        }
    }
}

TabularFeef tabular_feef(const TabularToyModel& toy, std::size_t policy)
{
    toy.validate();
    require(policy < toy.num_policies(), "tabular_feef: policy index out of range");
    const auto np = static_cast<Eigen::Index>(toy.num_parameters());
    const auto ns = static_cast<Eigen::Index>(toy.num_states());
    const auto no = static_cast<Eigen::Index>(toy.num_observations());
    const Matrix& state_given = toy.state_given[policy];

    // prior over (theta, s) and joint over (o, theta, s)
    Matrix prior_st(np, ns);
    for (Eigen::Index th = 0; th < np; ++th)
        prior_st.row(th) = toy.parameter_prior(th) * state_given.row(th);

    std::vector<Matrix> joint(static_cast<std::size_t>(no), Matrix(np, ns));
    Vector marginal_o = Vector::Zero(no);
    for (Eigen::Index o = 0; o < no; ++o) {
        for (Eigen::Index th = 0; th < np; ++th)
            for (Eigen::Index s = 0; s < ns; ++s)
                joint[static_cast<std::size_t>(o)](th, s) =
                    prior_st(th, s) * toy.observation_given[static_cast<std::size_t>(th)](s, o);
        marginal_o(o) = joint[static_cast<std::size_t>(o)].sum();
    }

    TabularFeef r;
    for (Eigen::Index o = 0; o < no; ++o) {
        const double qo = marginal_o(o);
        if (qo <= 0.0)
            continue;
        const auto& jo = joint[static_cast<std::size_t>(o)];
        const double po = toy.preferred(o);
        r.bound_rhs += xlogy_ratio(qo, po);
        for (Eigen::Index th = 0; th < np; ++th) {
            for (Eigen::Index s = 0; s < ns; ++s) {
                const double j = jo(th, s);
                if (j <= 0.0)
                    continue;
                const double post = j / qo;
                const double gen =
                    toy.generative_posterior.empty() ? post : toy.generative_posterior[static_cast<std::size_t>(o)](th, s);
                r.feef += xlogy_ratio(j, gen * po);
                r.feef_exact_posterior += xlogy_ratio(j, post * po);
                r.info_gain += qo * xlogy_ratio(post, prior_st(th, s));
            }
        }
    }

    for (Eigen::Index th = 0; th < np; ++th)
        for (Eigen::Index s = 0; s < ns; ++s) {
            const double w = prior_st(th, s);
            if (w <= 0.0)
                continue;
            for (Eigen::Index o = 0; o < no; ++o)
                r.extrinsic += w * xlogy_ratio(toy.observation_given[static_cast<std::size_t>(th)](s, o), toy.preferred(o));
        }

    // Parameter information gain, both as an expected posterior divergence and as
    // entropy of the average minus average entropy.
    const Vector marginal_s = prior_st.colwise().sum().transpose();
    for (Eigen::Index s = 0; s < ns; ++s) {
        if (marginal_s(s) <= 0.0)
            continue;
        for (Eigen::Index th = 0; th < np; ++th)
            r.parameter_info_gain += marginal_s(s) * xlogy_ratio(prior_st(th, s) / marginal_s(s), toy.parameter_prior(th));
    }
    double mean_entropy = 0.0;
    for (Eigen::Index th = 0; th < np; ++th)
        mean_entropy += toy.parameter_prior(th) * entropy(state_given.row(th).transpose());
    r.parameter_info_gain_entropy_form = entropy(marginal_s) - mean_entropy;
    return r;
}

double tabular_policy_free_energy(const TabularToyModel& toy, const Vector& policy_probs)
{
    require(static_cast<std::size_t>(policy_probs.size()) == toy.num_policies(),
            "tabular_policy_free_energy: one probability per policy");
    double total = 0.0;
    for (std::size_t p = 0; p < toy.num_policies(); ++p) {
        const double q = policy_probs(static_cast<Eigen::Index>(p));
        if (q <= 0.0)
            continue;
        total += q * (tabular_feef(toy, p).feef + std::log(q));
    }
    return total;
}

Vector tabular_optimal_policy(const TabularToyModel& toy)
{
    Vector neg(static_cast<Eigen::Index>(toy.num_policies()));
    for (std::size_t p = 0; p < toy.num_policies(); ++p)
        neg(static_cast<Eigen::Index>(p)) = -tabular_feef(toy, p).feef;
    return math::softmax_stable(neg);
}

TabularToyModel make_random_toy(Rng& rng, std::size_t states, std::size_t observations, std::size_t parameters,
                                std::size_t policies, bool random_generative)
{
    const auto ns = static_cast<Eigen::Index>(states);
    const auto no = static_cast<Eigen::Index>(observations);
    const auto np = static_cast<Eigen::Index>(parameters);
    TabularToyModel toy;
    toy.parameter_prior = random_simplex(rng, np);
    for (std::size_t p = 0; p < policies; ++p) {
        Matrix m(np, ns);
        for (Eigen::Index th = 0; th < np; ++th)
            m.row(th) = random_simplex(rng, ns).transpose();
        toy.state_given.push_back(std::move(m));
    }
    for (Eigen::Index th = 0; th < np; ++th) {
        Matrix m(ns, no);
        for (Eigen::Index s = 0; s < ns; ++s)
            m.row(s) = random_simplex(rng, no).transpose();
        toy.observation_given.push_back(std::move(m));
    }
    toy.preferred = random_simplex(rng, no);
    if (random_generative) {
        for (Eigen::Index o = 0; o < no; ++o) {
            const Vector flat = random_simplex(rng, np * ns);
            toy.generative_posterior.push_back(Eigen::Map<const Matrix>(flat.data(), np, ns));
        }
    }
    return toy;
}

std::vector<TabularToyModel> make_toy_suite(std::size_t count, std::uint64_t seed)
{
    Rng rng(seed);
    std::uniform_int_distribution<std::size_t> size(2, 5);
    std::vector<TabularToyModel> toys;
    toys.reserve(count);
    for (std::size_t i = 0; i < count; ++i) {
        const auto states = size(rng);
        const auto observations = size(rng);
        const auto parameters = size(rng);
        const auto policies = size(rng);
        toys.push_back(make_random_toy(rng, states, observations, parameters, policies, true));
    }
    return toys;
}

} // namespace feef::objective
