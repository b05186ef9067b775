#include "toda_darboux/toda_darboux.h"

#include "toda_darboux/error.hpp"
#include "toda_darboux/json_io.hpp"
#include "toda_darboux/pipeline.hpp"

#include <cstdlib>
#include <cstring>
#include <new>
#include <variant>

using namespace toda_darboux;

struct td_matrix {
    Instance instance;
};

struct td_factorization {
    RunConfig config;
    FullFactorization full;
    std::vector<ResidualReport> reports;
};

struct td_trajectory {
    std::variant<TodaTrajectory, KdvTrajectory> data;
};

namespace {

thread_local std::string g_last_error;
thread_local long g_last_index = -1;

td_status status_of(ErrorCode code)
{
    switch (code) {
    case ErrorCode::InvalidArgument: return TD_INVALID_ARGUMENT;
    case ErrorCode::Size: return TD_SIZE;
    case ErrorCode::SingularLeadingMinor: return TD_SINGULAR_LEADING_MINOR;
    case ErrorCode::SamplingFailed: return TD_SAMPLING_FAILED;
    case ErrorCode::PeelBreakdown: return TD_PEEL_BREAKDOWN;
    case ErrorCode::TableBreakdown: return TD_TABLE_BREAKDOWN;
    case ErrorCode::Index: return TD_INDEX;
    case ErrorCode::BlowUp: return TD_BLOW_UP;
    case ErrorCode::InsufficientSamples: return TD_INSUFFICIENT_SAMPLES;
    case ErrorCode::Parse: return TD_PARSE;
    }
    return TD_INTERNAL;
}

template <class F>
td_status guarded(F&& body)
{
    g_last_error.clear();
    g_last_index = -1;
    try {
        body();
        return TD_OK;
    } catch (const Error& e) {
        g_last_error = e.what();
        g_last_index = e.index();
        return status_of(e.code());
    } catch (const std::bad_alloc&) {
        g_last_error = "out of memory";
    } catch (const std::exception& e) {
        g_last_error = e.what();
    } catch (...) {
        g_last_error = "unknown failure";
    }
    return TD_INTERNAL;
}

void require(bool ok, const char* what)
{
    if (!ok) {
        throw Error(ErrorCode::InvalidArgument, what);
    }
}

char* copy_string(const std::string& text)
{
    char* out = static_cast<char*>(std::malloc(text.size() + 1));
    if (out == nullptr) {
        throw std::bad_alloc();
    }
    std::memcpy(out, text.data(), text.size() + 1);
    return out;
}

RunConfig to_config(const td_config* c)
{
    require(c != nullptr, "config is null");
    RunConfig config;
    config.p = c->p;
    config.n = c->n;
    config.shift = {c->shift_re, c->shift_im};
    config.seed = c->seed;
    config.dt = c->dt;
    config.steps = c->steps;
    require(c->mode == TD_MODE_REAL || c->mode == TD_MODE_COMPLEX, "unknown mode");
    config.mode = c->mode == TD_MODE_REAL ? Mode::real : Mode::complex;
    require(c->family == TD_FAMILY_RANDOM || c->family == TD_FAMILY_FACTORED, "unknown family");
    config.family = c->family == TD_FAMILY_RANDOM ? Family::random : Family::factored;
    config.pad = c->pad;
    config.tol_pivot = c->tol_pivot;
    config.tol_margin = c->tol_margin;
    config.tol_verify = c->tol_verify;
    config.tol_path = c->tol_path;
    config.validate();
    return config;
}

Json reports_json(const std::vector<ResidualReport>& reports)
{
    Json out = Json::array();
    for (const auto& r : reports) {
        out.push_back(to_json(r));
    }
    return out;
}

bool all_pass(const std::vector<ResidualReport>& reports)
{
    for (const auto& r : reports) {
        if (!r.pass) {
            return false;
        }
    }
    return true;
}

} // namespace

extern "C" {

void td_config_default(td_config* config)
{
    if (config == nullptr) {
        return;
    }
    *config = td_config{};
    config->p = 1;
    config->n = 8;
    config->seed = 1;
    config->dt = 1e-3;
    config->steps = 100;
    config->mode = TD_MODE_REAL;
    config->family = TD_FAMILY_RANDOM;
    config->pad = kDefaultEvolutionPad;
    config->tol_pivot = kDefaultPivotTolerance;
    config->tol_margin = kDefaultMargin;
    config->tol_verify = kDefaultVerifyTolerance;
    config->tol_path = kDefaultPathTolerance;
}

const char* td_status_name(td_status status)
{
    switch (status) {
    case TD_OK: return "Ok";
    case TD_INVALID_ARGUMENT: return to_string(ErrorCode::InvalidArgument);
    case TD_SIZE: return to_string(ErrorCode::Size);
    case TD_SINGULAR_LEADING_MINOR: return to_string(ErrorCode::SingularLeadingMinor);
    case TD_SAMPLING_FAILED: return to_string(ErrorCode::SamplingFailed);
    case TD_PEEL_BREAKDOWN: return to_string(ErrorCode::PeelBreakdown);
    case TD_TABLE_BREAKDOWN: return to_string(ErrorCode::TableBreakdown);
    case TD_INDEX: return to_string(ErrorCode::Index);
    case TD_BLOW_UP: return to_string(ErrorCode::BlowUp);
    case TD_INSUFFICIENT_SAMPLES: return to_string(ErrorCode::InsufficientSamples);
    case TD_PARSE: return to_string(ErrorCode::Parse);
    case TD_INTERNAL: return "Internal";
    }
    return "Unknown";
}

const char* td_last_error(void) { return g_last_error.c_str(); }

long td_last_error_index(void) { return g_last_index; }

void td_string_free(char* text) { std::free(text); }

td_status td_matrix_random(int p, int n, uint64_t seed, td_mode mode, td_matrix** out)
{
    return guarded([&] {
        require(out != nullptr, "output pointer is null");
        require(mode == TD_MODE_REAL || mode == TD_MODE_COMPLEX, "unknown mode");
        const Mode m = mode == TD_MODE_REAL ? Mode::real : Mode::complex;
        *out = new td_matrix{{random_hessenberg(p, n, seed, m), std::nullopt}};
    });
}

td_status td_matrix_instance(const td_config* config, int size, td_matrix** out)
{
    return guarded([&] {
        require(out != nullptr, "output pointer is null");
        const RunConfig c = to_config(config);
        require(size > c.p, "size must exceed p");
        *out = new td_matrix{make_instance(c, size)};
    });
}

td_status td_matrix_from_json(const char* json, td_matrix** out)
{
    return guarded([&] {
        require(json != nullptr && out != nullptr, "null argument");
        *out = new td_matrix{instance_from_json(parse_json(json))};
    });
}

td_status td_matrix_to_json(const td_matrix* matrix, char** out)
{
    return guarded([&] {
        require(matrix != nullptr && out != nullptr, "null argument");
        *out = copy_string(to_json(matrix->instance).dump());
    });
}

int td_matrix_p(const td_matrix* matrix) { return matrix ? matrix->instance.matrix.p() : -1; }

int td_matrix_size(const td_matrix* matrix) { return matrix ? matrix->instance.matrix.size() : -1; }

td_status td_matrix_entry(const td_matrix* matrix, int i, int j, double* re, double* im)
{
    return guarded([&] {
        require(matrix != nullptr && re != nullptr && im != nullptr, "null argument");
        const BandedHessenberg& m = matrix->instance.matrix;
        if (i < 0 || j < 0 || i >= m.size() || j >= m.size()) {
            throw Error(ErrorCode::Index, "entry outside the matrix", i);
        }
        const Scalar v = m(i, j);
        *re = v.real();
        *im = v.imag();
    });
}

void td_matrix_free(td_matrix* matrix) { delete matrix; }

td_status td_factorize(const td_matrix* matrix, const td_config* config, td_factorization** out)
{
    return guarded([&] {
        require(matrix != nullptr && out != nullptr, "null argument");
        const RunConfig c = to_config(config);
        const BandedHessenberg& j = matrix->instance.matrix;
        Rng rng = sampling_rng(c.seed);
        FullFactorization full = factorize_full(j, c.shift, matrix->instance.params, rng, c.factorization());
        std::vector<ResidualReport> reports = factorization_reports(j, full);
        *out = new td_factorization{c, std::move(full), std::move(reports)};
    });
}

td_status td_factorization_to_json(const td_factorization* fact, char** out)
{
    return guarded([&] {
        require(fact != nullptr && out != nullptr, "null argument");
        const Json doc = {{"config", to_json(fact->config)},
                          {"params", to_json(fact->full.params)},
                          {"factors", to_json(fact->full.factors)},
                          {"table", to_json(fact->full.table)},
                          {"reports", reports_json(fact->reports)},
                          {"pass", all_pass(fact->reports)}};
        *out = copy_string(doc.dump(2));
    });
}

td_status td_factorization_residuals(const td_factorization* fact, double* lu, double* darboux, double* uniqueness,
                                     int* pass)
{
    return guarded([&] {
        require(fact != nullptr, "null argument");
        double* slots[] = {lu, darboux, uniqueness};
        for (std::size_t k = 0; k < 3 && k < fact->reports.size(); ++k) {
            if (slots[k] != nullptr) {
                *slots[k] = fact->reports[k].max_residual;
            }
        }
        if (pass != nullptr) {
            *pass = all_pass(fact->reports) ? 1 : 0;
        }
    });
}

int td_factorization_gamma_count(const td_factorization* fact)
{
    return fact ? static_cast<int>(fact->full.table.count()) : -1;
}

td_status td_factorization_gamma(const td_factorization* fact, long n, double* re, double* im)
{
    return guarded([&] {
        require(fact != nullptr && re != nullptr && im != nullptr, "null argument");
        if (n < 1) {
            throw Error(ErrorCode::Index, "gamma index starts at 1", n);
        }
        const Scalar v = fact->full.table[n];
        *re = v.real();
        *im = v.imag();
    });
}

td_status td_transform(const td_factorization* fact, int i, td_matrix** out, double* backlund_residual, int* window)
{
    return guarded([&] {
        require(fact != nullptr && out != nullptr, "null argument");
        const int p = fact->full.factors.p();
        if (i < 0 || i > p) {
            throw Error(ErrorCode::Index, "transform index " + std::to_string(i) + " outside [0, " + std::to_string(p) + "]",
                        i);
        }
        TransformResult result = assemble_transform(fact->full.factors, i);
        const ResidualReport report = backlund_report(fact->full, i);
        if (backlund_residual != nullptr) {
            *backlund_residual = report.max_residual;
        }
        if (window != nullptr) {
            *window = result.window.rows;
        }
        *out = new td_matrix{{std::move(result.matrix), std::nullopt}};
    });
}

void td_factorization_free(td_factorization* fact) { delete fact; }

td_status td_evolve_toda(const td_matrix* initial, double dt, int steps, td_trajectory** out)
{
    return guarded([&] {
        require(initial != nullptr && out != nullptr, "null argument");
        *out = new td_trajectory{evolve_toda(initial->instance.matrix, dt, steps)};
    });
}

td_status td_evolve_kdv(const td_factorization* fact, double dt, int steps, td_trajectory** out)
{
    return guarded([&] {
        require(fact != nullptr && out != nullptr, "null argument");
        *out = new td_trajectory{evolve_kdv(fact->full.table, dt, steps)};
    });
}

int td_trajectory_samples(const td_trajectory* traj)
{
    if (traj == nullptr) {
        return -1;
    }
    return std::visit([](const auto& t) { return static_cast<int>(t.samples()); }, traj->data);
}

td_status td_trajectory_to_csv(const td_trajectory* traj, char** out)
{
    return guarded([&] {
        require(traj != nullptr && out != nullptr, "null argument");
        *out = copy_string(std::visit([](const auto& t) { return to_csv(t); }, traj->data));
    });
}

td_status td_trajectory_verify(const td_trajectory* traj, double tol, char** report_json, int* pass)
{
    return guarded([&] {
        require(traj != nullptr, "null argument");
        require(tol > 0.0, "tolerance must be positive");
        ResidualReport report = std::holds_alternative<TodaTrajectory>(traj->data)
                                    ? verify_toda(std::get<TodaTrajectory>(traj->data), tol)
                                    : verify_kdv(std::get<KdvTrajectory>(traj->data), tol);
        if (pass != nullptr) {
            *pass = report.pass ? 1 : 0;
        }
        if (report_json != nullptr) {
            *report_json = copy_string(to_json(report).dump(2));
        }
    });
}

void td_trajectory_free(td_trajectory* traj) { delete traj; }

td_status td_verify(const td_config* config, char** report_json, int* pass)
{
    return guarded([&] {
        const RunConfig c = to_config(config);
        const DiagramReport report = run_verify(c);
        if (pass != nullptr) {
            *pass = report.all_pass() ? 1 : 0;
        }
        if (report_json != nullptr) {
            const Json doc = {{"config", to_json(c)},
                              {"params", to_json(report.params)},
                              {"reports", reports_json(report.reports)},
                              {"pass", report.all_pass()}};
            *report_json = copy_string(doc.dump(2));
        }
    });
}

} // extern "C"
