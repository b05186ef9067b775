#include "toda_darboux/json_io.hpp"

#include "toda_darboux/error.hpp"

#include <fmt/format.h>

namespace toda_darboux {

namespace {

[[noreturn]] void parse_error(const std::string& what)
{
    throw Error(ErrorCode::Parse, "parse: " + what);
}

const Json& field(const Json& j, const char* key)
{
    if (!j.is_object() || !j.contains(key)) {
        parse_error(std::string("missing field '") + key + "'");
    }
    return j.at(key);
}

int int_field(const Json& j, const char* key)
{
    const Json& v = field(j, key);
    if (!v.is_number_integer()) {
        parse_error(std::string("field '") + key + "' must be an integer");
    }
    return v.get<int>();
}

std::vector<Scalar> scalars_from_json(const Json& j)
{
    if (!j.is_array()) {
        parse_error("expected an array of [re, im] pairs");
    }
    std::vector<Scalar> out;
    out.reserve(j.size());
    for (const Json& v : j) {
        out.push_back(scalar_from_json(v));
    }
    return out;
}

Json scalars_to_json(std::span<const Scalar> values)
{
    Json out = Json::array();
    for (Scalar v : values) {
        out.push_back(to_json(v));
    }
    return out;
}

const char* kind_name(BidiagonalKind kind) { return kind == BidiagonalKind::upper ? "upper_bidiagonal" : "lower_bidiagonal"; }

// "%.17g" round-trips doubles and prints the same bytes on every run.
std::string number(double v) { return fmt::format("{:.17g}", v); }

} // namespace

Json to_json(Scalar value)
{
    return Json::array({value.real(), value.imag()});
}

Json to_json(const BandedHessenberg& m)
{
    Json bands = Json::object();
    for (int d = 0; d <= m.p(); ++d) {
        bands[std::to_string(-d)] = scalars_to_json(m.band(d));
    }
    return {{"kind", "hessenberg"}, {"p", m.p()}, {"n", m.size()}, {"bands", std::move(bands)}};
}

Json to_json(const UnitLowerBanded& m)
{
    Json bands = Json::object();
    for (int d = 1; d <= m.p(); ++d) {
        bands[std::to_string(-d)] = scalars_to_json(m.band(d));
    }
    return {{"kind", "unit_lower"}, {"p", m.p()}, {"n", m.size()}, {"bands", std::move(bands)}};
}

Json to_json(const Bidiagonal& m)
{
    return {{"kind", kind_name(m.kind())}, {"n", m.size()}, {"values", scalars_to_json(m.values())}};
}

Json to_json(const GammaTable& table)
{
    return {{"p", table.p()}, {"columns", table.columns()}, {"gamma", scalars_to_json(table.values())}};
}

Json to_json(const ParameterSet& params)
{
    Json out = Json::array();
    for (const auto& row : params.alphas) {
        out.push_back(scalars_to_json(row));
    }
    return out;
}

Json to_json(const DarbouxFactors& factors)
{
    Json lower = Json::array();
    for (const auto& f : factors.lower) {
        lower.push_back(to_json(f));
    }
    return {{"p", factors.p()},
            {"n", factors.size()},
            {"C", to_json(factors.shift)},
            {"upper", to_json(factors.upper)},
            {"lower", std::move(lower)}};
}

Json to_json(const ResidualReport& report)
{
    return {{"name", report.name},
            {"max_residual", report.max_residual},
            {"argmax", {{"entry", report.argmax_entry}, {"time_index", report.argmax_time}}},
            {"tolerance", report.tolerance},
            {"pass", report.pass}};
}

Json to_json(const RunConfig& config)
{
    return {{"p", config.p},
            {"n", config.n},
            {"C", to_json(config.shift)},
            {"seed", config.seed},
            {"dt", config.dt},
            {"steps", config.steps},
            {"mode", config.mode == Mode::real ? "real" : "complex"},
            {"family", config.family == Family::random ? "random" : "factored"},
            {"pad", config.pad},
            {"tolerances",
             {{"pivot", config.tol_pivot},
              {"margin", config.tol_margin},
              {"verify", config.tol_verify},
              {"path", config.tol_path}}}};
}

Scalar scalar_from_json(const Json& j)
{
    if (j.is_number()) {
        return {j.get<double>(), 0.0};
    }
    if (!j.is_array() || j.size() != 2 || !j[0].is_number() || !j[1].is_number()) {
        parse_error("scalar must be [re, im]");
    }
    return {j[0].get<double>(), j[1].get<double>()};
}

BandedHessenberg hessenberg_from_json(const Json& j)
{
    if (j.contains("kind") && j.at("kind") != "hessenberg") {
        parse_error("expected a matrix of kind 'hessenberg'");
    }
    const int p = int_field(j, "p");
    const int n = int_field(j, "n");
    const Json& bands_json = field(j, "bands");
    if (p < 0 || n < 1) {
        parse_error("need p >= 0 and n >= 1");
    }
    std::vector<std::vector<Scalar>> bands;
    for (int d = 0; d <= p; ++d) {
        const std::string key = std::to_string(-d);
        if (!bands_json.is_object() || !bands_json.contains(key)) {
            parse_error("missing band '" + key + "'");
        }
        bands.push_back(scalars_from_json(bands_json.at(key)));
    }
    return BandedHessenberg(p, n, std::move(bands));
}

GammaTable table_from_json(const Json& j)
{
    return GammaTable(int_field(j, "p"), int_field(j, "columns"), scalars_from_json(field(j, "gamma")));
}

ParameterSet params_from_json(const Json& j)
{
    if (!j.is_array()) {
        parse_error("parameters must be an array of arrays");
    }
    ParameterSet params;
    for (const Json& row : j) {
        params.alphas.push_back(scalars_from_json(row));
    }
    return params;
}

Instance instance_from_json(const Json& j)
{
    Instance instance{hessenberg_from_json(j), std::nullopt};
    if (j.contains("params")) {
        instance.params = params_from_json(j.at("params"));
        instance.params->validate(instance.matrix.p());
    }
    return instance;
}

Json to_json(const Instance& instance)
{
    Json out = to_json(instance.matrix);
    if (instance.params) {
        out["params"] = to_json(*instance.params);
    }
    return out;
}

Json parse_json(const std::string& text)
{
    try {
        return Json::parse(text);
    } catch (const nlohmann::json::exception& e) {
        parse_error(e.what());
    }
}

std::string to_csv(const TodaTrajectory& trajectory)
{
    std::string out = "t,entry_id,re,im\n";
    for (std::size_t m = 0; m < trajectory.samples(); ++m) {
        const auto& state = trajectory.states[m];
        const std::string t = number(trajectory.times[m]);
        for (int i = 0; i < state.size(); ++i) {
            for (int j = std::max(0, i - state.p()); j <= i; ++j) {
                const Scalar v = state(i, j);
                out += fmt::format("{},a_{}_{},{},{}\n", t, i, j, number(v.real()), number(v.imag()));
            }
        }
    }
    return out;
}

std::string to_csv(const KdvTrajectory& trajectory)
{
    std::string out = "t,entry_id,re,im\n";
    for (std::size_t m = 0; m < trajectory.samples(); ++m) {
        const auto& state = trajectory.states[m];
        const std::string t = number(trajectory.times[m]);
        for (long n = 1; n <= state.count(); ++n) {
            const Scalar v = state[n];
            out += fmt::format("{},g_{},{},{}\n", t, n, number(v.real()), number(v.imag()));
        }
    }
    return out;
}

Json trajectory_manifest(double dt, int steps, int p, int n, Scalar shift, std::uint64_t seed)
{
    return {{"dt", dt}, {"steps", steps}, {"p", p}, {"n", n}, {"C", to_json(shift)}, {"seed", seed}};
}

} // namespace toda_darboux
