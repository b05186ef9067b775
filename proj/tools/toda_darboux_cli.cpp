// Command-line front end. Talks to the library only through the C API.

#include "toda_darboux/toda_darboux.h"

#include <CLI11.hpp>
#include <json.hpp>
#include <spdlog/sinks/stdout_color_sinks.h>
#include <spdlog/spdlog.h>

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <memory>
#include <optional>
#include <sstream>
#include <string>

namespace {

using Json = nlohmann::ordered_json;

enum Exit { kPass = 0, kCheckFailed = 1, kError = 2 };

struct Failure {
    td_status status;
    std::string message;
    long index;
};

struct Owned {
    char* text = nullptr;
    ~Owned() { td_string_free(text); }
    std::string str() const { return text ? std::string(text) : std::string(); }
};

template <class T, void (*Free)(T*)>
struct Handle {
    T* ptr = nullptr;
    ~Handle() { Free(ptr); }
};
using Matrix = Handle<td_matrix, td_matrix_free>;
using Factorization = Handle<td_factorization, td_factorization_free>;
using Trajectory = Handle<td_trajectory, td_trajectory_free>;

void check(td_status status)
{
    if (status != TD_OK) {
        throw Failure{status, td_last_error(), td_last_error_index()};
    }
}

struct Options {
    td_config config{};
    std::string mode = "real";
    std::string family;
    std::string in;
    std::string out = "-";
    int index = 0;
    std::string lattice = "toda";
    std::string manifest;
};

void write_output(const std::string& path, const std::string& text)
{
    if (path == "-") {
        std::cout << text;
        if (!text.empty() && text.back() != '\n') {
            std::cout << '\n';
        }
        return;
    }
    std::ofstream file(path, std::ios::binary);
    if (!file) {
        throw Failure{TD_INVALID_ARGUMENT, "cannot write " + path, -1};
    }
    file << text;
    if (!text.empty() && text.back() != '\n') {
        file << '\n';
    }
    spdlog::info("wrote {}", path);
}

std::string read_file(const std::string& path)
{
    std::ifstream file(path, std::ios::binary);
    if (!file) {
        throw Failure{TD_INVALID_ARGUMENT, "cannot read " + path, -1};
    }
    std::ostringstream buffer;
    buffer << file.rdbuf();
    return buffer.str();
}

void finish_config(Options& o, const char* default_family)
{
    if (o.mode != "real" && o.mode != "complex") {
        throw Failure{TD_INVALID_ARGUMENT, "--mode must be real or complex", -1};
    }
    o.config.mode = o.mode == "real" ? TD_MODE_REAL : TD_MODE_COMPLEX;
    const std::string family = o.family.empty() ? default_family : o.family;
    if (family != "random" && family != "factored") {
        throw Failure{TD_INVALID_ARGUMENT, "--family must be random or factored", -1};
    }
    o.config.family = family == "random" ? TD_FAMILY_RANDOM : TD_FAMILY_FACTORED;
}

// J(t0) from --in, or generated from the config.
void load_matrix(const Options& o, Matrix& m)
{
    if (!o.in.empty()) {
        check(td_matrix_from_json(read_file(o.in).c_str(), &m.ptr));
        spdlog::debug("read {}x{} matrix from {}", td_matrix_size(m.ptr), td_matrix_size(m.ptr), o.in);
        return;
    }
    check(td_matrix_instance(&o.config, o.config.n, &m.ptr));
}

int cmd_factorize(const Options& o)
{
    Matrix m;
    load_matrix(o, m);
    Factorization f;
    check(td_factorize(m.ptr, &o.config, &f.ptr));
    Owned doc;
    check(td_factorization_to_json(f.ptr, &doc.text));
    write_output(o.out, doc.str());
    int pass = 0;
    check(td_factorization_residuals(f.ptr, nullptr, nullptr, nullptr, &pass));
    return pass ? kPass : kCheckFailed;
}

int cmd_transform(const Options& o)
{
    Matrix m;
    load_matrix(o, m);
    Factorization f;
    check(td_factorize(m.ptr, &o.config, &f.ptr));
    Matrix t;
    double backlund = 0.0;
    int window = 0;
    check(td_transform(f.ptr, o.index, &t.ptr, &backlund, &window));
    Owned matrix_json;
    check(td_matrix_to_json(t.ptr, &matrix_json.text));
    int factor_pass = 0;
    check(td_factorization_residuals(f.ptr, nullptr, nullptr, nullptr, &factor_pass));
    const double tol = 1e-10;
    const bool pass = factor_pass && backlund <= tol;
    const Json doc = {{"i", o.index},
                      {"window", window},
                      {"matrix", Json::parse(matrix_json.str())},
                      {"backlund", {{"max_residual", backlund}, {"tolerance", tol}, {"pass", backlund <= tol}}},
                      {"pass", pass}};
    write_output(o.out, doc.dump(2));
    return pass ? kPass : kCheckFailed;
}

int cmd_evolve(const Options& o)
{
    Matrix m;
    load_matrix(o, m);
    Trajectory traj;
    if (o.lattice == "toda") {
        check(td_evolve_toda(m.ptr, o.config.dt, o.config.steps, &traj.ptr));
    } else if (o.lattice == "kdv") {
        Factorization f;
        check(td_factorize(m.ptr, &o.config, &f.ptr));
        check(td_evolve_kdv(f.ptr, o.config.dt, o.config.steps, &traj.ptr));
    } else {
        throw Failure{TD_INVALID_ARGUMENT, "--lattice must be toda or kdv", -1};
    }
    Owned csv;
    check(td_trajectory_to_csv(traj.ptr, &csv.text));
    write_output(o.out, csv.str());

    const Json manifest = {{"dt", o.config.dt},
                           {"steps", o.config.steps},
                           {"p", td_matrix_p(m.ptr)},
                           {"n", td_matrix_size(m.ptr)},
                           {"C", {o.config.shift_re, o.config.shift_im}},
                           {"seed", o.config.seed}};
    std::string manifest_path = o.manifest;
    if (manifest_path.empty() && o.out != "-") {
        manifest_path = o.out + ".manifest.json";
    }
    if (!manifest_path.empty()) {
        write_output(manifest_path, manifest.dump(2));
    }
    return kPass;
}

void print_table(const Json& doc)
{
    std::fprintf(stderr, "%-20s %14s %10s  %-6s %s\n", "check", "max_residual", "tol", "result", "argmax");
    for (const Json& r : doc.at("reports")) {
        const std::string argmax =
            r.at("argmax").at("entry").get<std::string>() + " @" + std::to_string(r.at("argmax").at("time_index").get<long>());
        std::fprintf(stderr, "%-20s %14.3e %10.1e  %-6s %s\n", r.at("name").get<std::string>().c_str(),
                     r.at("max_residual").get<double>(), r.at("tolerance").get<double>(),
                     r.at("pass").get<bool>() ? "pass" : "FAIL", argmax.c_str());
    }
}

int cmd_verify(const Options& o)
{
    Owned doc;
    int pass = 0;
    check(td_verify(&o.config, &doc.text, &pass));
    print_table(Json::parse(doc.str()));
    write_output(o.out, doc.str());
    return pass ? kPass : kCheckFailed;
}

void add_common(CLI::App* sub, Options& o)
{
    sub->add_option("--p", o.config.p, "number of subdiagonals")->capture_default_str();
    sub->add_option("--n", o.config.n, "size of J (verify: rows of every J^(j) that are checked)")
        ->capture_default_str();
    sub->add_option("--C-re", o.config.shift_re, "shift, real part")->capture_default_str();
    sub->add_option("--C-im", o.config.shift_im, "shift, imaginary part")->capture_default_str();
    sub->add_option("--seed", o.config.seed, "seed for every random draw")->capture_default_str();
    sub->add_option("--dt", o.config.dt, "RK4 step")->capture_default_str();
    sub->add_option("--steps", o.config.steps, "RK4 steps")->capture_default_str();
    sub->add_option("--mode", o.mode, "real | complex")->capture_default_str();
    sub->add_option("--family", o.family, "random | factored");
    sub->add_option("--pad", o.config.pad, "spare table columns beyond the window (verify)")->capture_default_str();
    sub->add_option("--tol-pivot", o.config.tol_pivot)->capture_default_str();
    sub->add_option("--tol-margin", o.config.tol_margin)->capture_default_str();
    sub->add_option("--tol-verify", o.config.tol_verify)->capture_default_str();
    sub->add_option("--tol-path", o.config.tol_path)->capture_default_str();
    sub->add_option("--out", o.out, "output file, - for stdout")->capture_default_str();
}

void setup_logging()
{
    auto logger = spdlog::stderr_color_mt("toda_darboux");
    spdlog::set_default_logger(logger);
    spdlog::set_pattern("[%l] %v");
    spdlog::set_level(spdlog::level::warn);
    if (const char* level = std::getenv("TODA_DARBOUX_LOG")) {
        spdlog::set_level(spdlog::level::from_str(level));
    }
}

void print_error(const Failure& f)
{
    const Json doc = {{"error",
                       {{"status", td_status_name(f.status)},
                        {"code", static_cast<int>(f.status)},
                        {"message", f.message},
                        {"index", f.index}}}};
    std::cout << doc.dump(2) << '\n';
    spdlog::error("{}: {}", td_status_name(f.status), f.message);
}

} // namespace

int main(int argc, char** argv)
{
    setup_logging();

    Options o;
    td_config_default(&o.config);

    CLI::App app{"Darboux factorizations and Backlund transformations of banded Hessenberg matrices"};
    app.require_subcommand(1);

    auto* factorize = app.add_subcommand("factorize", "LU, Darboux factors and gamma table of J - C I");
    add_common(factorize, o);
    factorize->add_option("--in", o.in, "matrix JSON instead of a generated J");

    auto* transform = app.add_subcommand("transform", "J^(i) from the factors, checked against the closed form");
    add_common(transform, o);
    transform->add_option("--in", o.in, "matrix JSON instead of a generated J");
    transform->add_option("--i", o.index, "0 <= i <= p")->capture_default_str();

    auto* evolve = app.add_subcommand("evolve", "integrate the Toda or KdV lattice, CSV out");
    add_common(evolve, o);
    evolve->add_option("--in", o.in, "matrix JSON instead of a generated J");
    evolve->add_option("--lattice", o.lattice, "toda | kdv")->capture_default_str();
    evolve->add_option("--manifest", o.manifest, "manifest path (default <out>.manifest.json)");

    auto* verify = app.add_subcommand("verify", "commuting diagram: KdV then Backlund against direct Toda");
    add_common(verify, o);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        return app.exit(e) == 0 ? 0 : kError;
    }

    try {
        if (verify->parsed()) {
            finish_config(o, "factored");
            return cmd_verify(o);
        }
        finish_config(o, "random");
        if (factorize->parsed()) {
            return cmd_factorize(o);
        }
        if (transform->parsed()) {
            return cmd_transform(o);
        }
        return cmd_evolve(o);
    } catch (const Failure& f) {
        print_error(f);
        return kError;
    } catch (const std::exception& e) {
        print_error({TD_INTERNAL, e.what(), -1});
        return kError;
    }
}
