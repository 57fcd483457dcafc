// SPDX-License-Identifier: Apache-2.0

#include "isac/serialization.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>

namespace isac
{

namespace
{

// Typed field access with path-qualified errors.
class Reader
{
  public:
    Reader(const json &node, std::string path) : node_(node), path_(std::move(path))
    {
        if (!node_.is_object())
            throw ConfigError(path_.empty() ? "<root>" : path_, "expected an object");
    }

    std::string path_of(const std::string &key) const { return path_.empty() ? key : path_ + "." + key; }

    bool has(const std::string &key) const { return node_.contains(key); }

    const json &at(const std::string &key) const
    {
        if (!node_.contains(key))
            throw ConfigError(path_of(key), "missing required field");
        return node_.at(key);
    }

    double number(const std::string &key) const
    {
        const json &v = at(key);
        if (!v.is_number())
            throw ConfigError(path_of(key), "expected a number");
        return v.get<double>();
    }

    int integer(const std::string &key) const
    {
        const json &v = at(key);
        if (!v.is_number_integer())
            throw ConfigError(path_of(key), "expected an integer");
        return v.get<int>();
    }

    std::uint64_t unsigned_integer(const std::string &key) const
    {
        const json &v = at(key);
        if (!v.is_number_unsigned())
            throw ConfigError(path_of(key), "expected a non-negative integer");
        return v.get<std::uint64_t>();
    }

    bool boolean(const std::string &key) const
    {
        const json &v = at(key);
        if (!v.is_boolean())
            throw ConfigError(path_of(key), "expected true or false");
        return v.get<bool>();
    }

    std::string string(const std::string &key) const
    {
        const json &v = at(key);
        if (!v.is_string())
            throw ConfigError(path_of(key), "expected a string");
        return v.get<std::string>();
    }

    Reader child(const std::string &key) const { return Reader(at(key), path_of(key)); }

  private:
    const json &node_;
    std::string path_;
};

UlaSpec read_array(const Reader &r)
{
    return {r.integer("num_elements"), r.number("spacing")};
}

json array_to_json(const UlaSpec &a)
{
    return {{"num_elements", a.num_elements}, {"spacing", a.spacing}};
}

json complex_to_json(cplx z)
{
    return json::array({z.real(), z.imag()});
}

cplx complex_from_json(const json &j)
{
    if (!j.is_array() || j.size() != 2)
        throw std::invalid_argument("complex entry must be [re, im]");
    return {j[0].get<double>(), j[1].get<double>()};
}

json vector_to_json(const cvec &v)
{
    json out = json::array();
    for (Eigen::Index k = 0; k < v.size(); ++k)
        out.push_back(complex_to_json(v(k)));
    return out;
}

json eigen_to_json(const EigenData &e)
{
    json values = json::array();
    for (Eigen::Index k = 0; k < e.values.size(); ++k)
        values.push_back(e.values(k));
    return {{"eigenvalues", values}, {"eigenvectors", matrix_to_json(e.vectors)}};
}

EigenData eigen_from_json(const json &j)
{
    EigenData e;
    const json &values = j.at("eigenvalues");
    e.values.resize(static_cast<Eigen::Index>(values.size()));
    for (std::size_t k = 0; k < values.size(); ++k)
        e.values(static_cast<Eigen::Index>(k)) = values[k].get<double>();
    e.vectors = matrix_from_json(j.at("eigenvectors"));
    return e;
}

} // namespace

RunConfig parse_config(const std::string &text)
{
    json root;
    try
    {
        root = json::parse(text, nullptr, true, true);
    }
    catch (const json::parse_error &e)
    {
        throw ConfigError("", std::string("malformed JSON: ") + e.what());
    }

    const Reader r(root, "");
    RunConfig config;
    ScenarioConfig &s = config.scenario;
    s.tx = read_array(r.child("tx_array"));
    s.rx = read_array(r.child("rx_array"));
    s.ue = read_array(r.child("ue_array"));
    s.sigma_s_sq = r.number("sigma_s_sq");
    s.sigma_c_sq = r.number("sigma_c_sq");
    s.p_max = r.number("p_max");
    s.coherence_time = r.integer("coherence_time");
    s.comm_gain = {r.number("comm_gain_second_moment")};
    s.base_seed = r.unsigned_integer("base_seed");
    try
    {
        s.rate_log_base = parse_log_base(r.string("rate_log_base"));
    }
    catch (const std::invalid_argument &e)
    {
        throw ConfigError("rate_log_base", e.what());
    }

    const json &targets = r.at("targets");
    if (!targets.is_array() || targets.empty())
        throw ConfigError("targets", "expected a non-empty array");
    for (std::size_t i = 0; i < targets.size(); ++i)
    {
        const Reader t(targets[i], "targets[" + std::to_string(i) + "]");
        TargetModel model;
        model.name = t.string("name");
        model.angle_prior = {deg_to_rad(t.number("mean_direction_deg")), t.number("kappa")};
        model.gain_prior = {t.number("gain_second_moment")};
        model.is_comm_user = t.boolean("comm_user");
        s.targets.push_back(std::move(model));
    }

    const Reader mc = r.child("monte_carlo");
    s.mc.quadrature_nodes = mc.integer("quadrature_nodes");
    s.mc.sensing_angle_samples = mc.integer("sensing_angle_samples");
    s.mc.comm_angle_samples = mc.integer("comm_angle_samples");
    s.mc.gaussian_samples = mc.integer("gaussian_samples");
    s.mc.rate_saa_samples = mc.integer("rate_saa_samples");

    const Reader acq = r.child("acquisition");
    s.acquisition.kappa_pre = acq.number("kappa_pre");
    if (acq.has("power"))
        s.acquisition.power = acq.number("power");

    if (r.has("sweep"))
    {
        const Reader sw = r.child("sweep");
        if (sw.has("choices"))
        {
            const json &choices = sw.at("choices");
            if (!choices.is_array())
                throw ConfigError("sweep.choices", "expected an array of choice ids");
            config.sweep.choices.clear();
            for (const json &c : choices)
            {
                if (!c.is_string())
                    throw ConfigError("sweep.choices", "expected an array of choice ids");
                config.sweep.choices.push_back(c.get<std::string>());
            }
        }
        if (sw.has("scheme"))
            config.sweep.scheme = sw.string("scheme");
    }

    try
    {
        s.validate();
    }
    catch (const std::invalid_argument &e)
    {
        throw ConfigError("", e.what());
    }
    return config;
}

RunConfig load_config(const std::filesystem::path &path)
{
    std::ifstream in(path);
    if (!in)
        throw ConfigError("", "cannot open config file " + path.string());
    std::ostringstream text;
    text << in.rdbuf();
    return parse_config(text.str());
}

json config_to_json(const RunConfig &config)
{
    const ScenarioConfig &s = config.scenario;
    json targets = json::array();
    for (const auto &t : s.targets)
        targets.push_back({{"name", t.name},
                           {"mean_direction_deg", rad_to_deg(t.angle_prior.mean_direction)},
                           {"kappa", t.angle_prior.kappa},
                           {"gain_second_moment", t.gain_prior.second_moment},
                           {"comm_user", t.is_comm_user}});
    json acquisition = {{"kappa_pre", s.acquisition.kappa_pre}};
    if (s.acquisition.power >= 0.0)
        acquisition["power"] = s.acquisition.power;
    return {{"tx_array", array_to_json(s.tx)},
            {"rx_array", array_to_json(s.rx)},
            {"ue_array", array_to_json(s.ue)},
            {"sigma_s_sq", s.sigma_s_sq},
            {"sigma_c_sq", s.sigma_c_sq},
            {"p_max", s.p_max},
            {"coherence_time", s.coherence_time},
            {"comm_gain_second_moment", s.comm_gain.second_moment},
            {"targets", targets},
            {"monte_carlo",
             {{"quadrature_nodes", s.mc.quadrature_nodes},
              {"sensing_angle_samples", s.mc.sensing_angle_samples},
              {"comm_angle_samples", s.mc.comm_angle_samples},
              {"gaussian_samples", s.mc.gaussian_samples},
              {"rate_saa_samples", s.mc.rate_saa_samples}}},
            {"base_seed", s.base_seed},
            {"rate_log_base", to_string(s.rate_log_base)},
            {"acquisition", acquisition},
            {"sweep", {{"choices", config.sweep.choices}, {"scheme", config.sweep.scheme}}}};
}

std::string content_hash(const json &j)
{
    std::uint64_t h = 0xcbf29ce484222325ULL;
    for (unsigned char c : j.dump())
    {
        h ^= c;
        h *= 0x100000001b3ULL;
    }
    char buffer[17];
    std::snprintf(buffer, sizeof buffer, "%016llx", static_cast<unsigned long long>(h));
    return buffer;
}

std::string matrix_inputs_hash(const ScenarioConfig &scenario)
{
    json targets = json::array();
    for (const auto &t : scenario.targets)
        targets.push_back({t.angle_prior.mean_direction, t.angle_prior.kappa});
    return content_hash({{"tx", array_to_json(scenario.tx)},
                         {"rx", array_to_json(scenario.rx)},
                         {"targets", targets},
                         {"quadrature_nodes", scenario.mc.quadrature_nodes}});
}

json matrix_to_json(const cmat &m)
{
    json rows = json::array();
    for (Eigen::Index r = 0; r < m.rows(); ++r)
        rows.push_back(vector_to_json(m.row(r).transpose()));
    return rows;
}

cmat matrix_from_json(const json &j)
{
    if (!j.is_array() || j.empty())
        throw std::invalid_argument("matrix must be a non-empty array of rows");
    const auto rows = static_cast<Eigen::Index>(j.size());
    const auto cols = static_cast<Eigen::Index>(j[0].size());
    cmat m(rows, cols);
    for (Eigen::Index r = 0; r < rows; ++r)
    {
        const json &row = j[static_cast<std::size_t>(r)];
        if (static_cast<Eigen::Index>(row.size()) != cols)
            throw std::invalid_argument("matrix rows differ in length");
        for (Eigen::Index c = 0; c < cols; ++c)
            m(r, c) = complex_from_json(row[static_cast<std::size_t>(c)]);
    }
    return m;
}

json sense_matrix_to_json(const SenseMatrix &m, std::size_t target, const std::string &inputs_hash)
{
    json out = {{"kind", "sensing_matrix"},
                {"target", target + 1},
                {"inputs_hash", inputs_hash},
                {"dimension", m.dimension()},
                {"matrix", matrix_to_json(m.matrix)}};
    out.update(eigen_to_json(m.eigen));
    return out;
}

SenseMatrix sense_matrix_from_json(const json &j)
{
    if (j.value("kind", "") != "sensing_matrix")
        throw std::invalid_argument("not a sensing matrix file");
    SenseMatrix m;
    m.matrix = matrix_from_json(j.at("matrix"));
    m.eigen = eigen_from_json(j);
    m.check_invariants();
    return m;
}

json lbar_to_json(const LbarMatrix &m, const std::string &inputs_hash)
{
    json out = {{"kind", "comm_matrix"},
                {"inputs_hash", inputs_hash},
                {"dimension", m.matrix.rows()},
                {"matrix", matrix_to_json(m.matrix)}};
    out.update(eigen_to_json(m.eigen));
    return out;
}

LbarMatrix lbar_from_json(const json &j)
{
    if (j.value("kind", "") != "comm_matrix")
        throw std::invalid_argument("not a comm matrix file");
    LbarMatrix m;
    m.matrix = matrix_from_json(j.at("matrix"));
    m.eigen = eigen_from_json(j);
    m.check_invariants();
    return m;
}

json catalog_to_json(const DirectionCatalog &catalog)
{
    json out = json::object();
    for (const auto &[label, v] : catalog.entries)
        out[label] = vector_to_json(v);
    return out;
}

json acquisition_to_json(const AcquisitionResult &result)
{
    return {{"kappa_pre", result.kappa_pre},
            {"kappa_post", result.kappa_post},
            {"mmse_proxy", result.mmse_proxy},
            {"acquisition_power", result.power},
            {"std_pre_deg", rad_to_deg(kappa_to_std(result.kappa_pre))},
            {"std_post_deg", rad_to_deg(kappa_to_std(result.kappa_post))},
            {"proxy_definition", result.proxy_definition}};
}

void write_json(const std::filesystem::path &path, const json &j)
{
    std::ofstream out(path, std::ios::binary);
    if (!out)
        throw std::runtime_error("cannot write " + path.string());
    out << j.dump(2) << '\n';
}

json read_json(const std::filesystem::path &path)
{
    std::ifstream in(path, std::ios::binary);
    if (!in)
        throw std::runtime_error("cannot read " + path.string());
    return json::parse(in);
}

} // namespace isac
