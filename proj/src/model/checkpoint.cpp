#include "feef/model/checkpoint.hpp"

#include <cstdlib>
#include <istream>
#include <ostream>
#include <string>

namespace feef::model {

namespace {

const char* activation_name(math::Activation a)
{
    switch (a) {
    case math::Activation::swish:
        return "swish";
    case math::Activation::relu:
        return "relu";
    case math::Activation::linear:
        break;
    }
    return "linear";
}

math::Activation parse_activation(const std::string& s)
{
    if (s == "swish")
        return math::Activation::swish;
    if (s == "relu")
        return math::Activation::relu;
    if (s == "linear")
        return math::Activation::linear;
    throw std::runtime_error("checkpoint: unknown activation '" + s + "'");
}

void write_values(std::ostream& out, const char* tag, const double* data, std::size_t n)
{
    out << tag << ' ' << n;
    for (std::size_t i = 0; i < n; ++i)
        out << ' ' << std::hexfloat << data[i] << std::defaultfloat;
    out << '\n';
}

void write_vector(std::ostream& out, const char* tag, const Vector& v)
{
    write_values(out, tag, v.data(), static_cast<std::size_t>(v.size()));
}

void write_net(std::ostream& out, const math::DenseNet& net)
{
    out << "net " << net.num_layers() << '\n';
    for (const auto& l : net.layers())
        out << "layer " << l.in << ' ' << l.out << ' ' << activation_name(l.activation) << '\n';
    write_values(out, "params", net.params().data(), net.num_params());
}

class Reader {
public:
    explicit Reader(std::istream& in) : in_(in) {}

    void expect(const std::string& word)
    {
        const std::string got = token();
        if (got != word)
            throw std::runtime_error("checkpoint: expected '" + word + "', found '" + got + "'");
    }

    std::string token()
    {
        std::string s;
        if (!(in_ >> s))
            throw std::runtime_error("checkpoint: unexpected end of input");
        return s;
    }

    std::size_t count()
    {
        const std::string s = token();
        char* end = nullptr;
        const unsigned long long v = std::strtoull(s.c_str(), &end, 10);
        if (end == s.c_str() || *end != '\0')
            throw std::runtime_error("checkpoint: bad count '" + s + "'");
        return static_cast<std::size_t>(v);
    }

    double real()
    {
        const std::string s = token();
        char* end = nullptr;
        const double v = std::strtod(s.c_str(), &end);
        if (end == s.c_str() || *end != '\0')
            throw std::runtime_error("checkpoint: bad number '" + s + "'");
        return v;
    }

    void values(const std::string& tag, double* data, std::size_t expected)
    {
        expect(tag);
        if (count() != expected)
            throw std::runtime_error("checkpoint: size mismatch for '" + tag + "'");
        for (std::size_t i = 0; i < expected; ++i)
            data[i] = real();
    }

    Vector vector(const std::string& tag)
    {
        expect(tag);
        const std::size_t n = count();
        Vector v(static_cast<Eigen::Index>(n));
        for (std::size_t i = 0; i < n; ++i)
            v(static_cast<Eigen::Index>(i)) = real();
        return v;
    }

    math::DenseNet net()
    {
        expect("net");
        const std::size_t layers = count();
        std::vector<math::LayerShape> shapes;
        for (std::size_t k = 0; k < layers; ++k) {
            expect("layer");
            math::LayerShape l;
            l.in = count();
            l.out = count();
            l.activation = parse_activation(token());
            shapes.push_back(l);
        }
        math::DenseNet n(std::move(shapes));
        values("params", n.params().data(), n.num_params());
        return n;
    }

private:
    std::istream& in_;
};

} // namespace

void save_checkpoint(const WorldModel& model, std::ostream& out)
{
    const auto& norm = model.normalizer();
    out << "feef-checkpoint " << kCheckpointVersion << '\n';
    out << "state_dim " << model.state_dim() << "\naction_dim " << model.action_dim() << '\n';
    write_vector(out, "input_mean", norm.input_mean);
    write_vector(out, "input_std", norm.input_std);
    write_vector(out, "delta_scale", norm.delta_scale);
    write_vector(out, "reward_input_mean", norm.reward_input_mean);
    write_vector(out, "reward_input_std", norm.reward_input_std);
    out << "ensemble " << model.ensemble_size() << '\n';
    for (const auto& m : model.ensemble().members)
        write_net(out, m);
    out << "reward\n";
    write_net(out, model.reward_model().net);
    out << "end\n";
}

WorldModel load_checkpoint(std::istream& in)
{
    Reader r(in);
    r.expect("feef-checkpoint");
    const std::size_t version = r.count();
    if (version != static_cast<std::size_t>(kCheckpointVersion))
        throw std::runtime_error("checkpoint: unsupported version " + std::to_string(version));
    r.expect("state_dim");
    const std::size_t ds = r.count();
    r.expect("action_dim");
    const std::size_t da = r.count();

    Normalizer norm;
    norm.input_mean = r.vector("input_mean");
    norm.input_std = r.vector("input_std");
    norm.delta_scale = r.vector("delta_scale");
    norm.reward_input_mean = r.vector("reward_input_mean");
    norm.reward_input_std = r.vector("reward_input_std");
    if (static_cast<std::size_t>(norm.delta_scale.size()) != ds ||
        static_cast<std::size_t>(norm.input_mean.size()) != ds + da)
        throw std::runtime_error("checkpoint: normaliser dimensions disagree with header");

    r.expect("ensemble");
    const std::size_t b = r.count();
    TransitionEnsemble ensemble;
    for (std::size_t i = 0; i < b; ++i)
        ensemble.members.push_back(r.net());
    r.expect("reward");
    RewardModel reward{r.net()};
    r.expect("end");
    try {
        return WorldModel(std::move(ensemble), std::move(reward), std::move(norm));
    } catch (const ContractViolation& e) {
        throw std::runtime_error(std::string("checkpoint: ") + e.what());
    }
}

} // namespace feef::model
