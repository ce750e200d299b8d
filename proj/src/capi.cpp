#include "cntsim.h"

#include <string>

#include "cnt/runner.hpp"

struct cntsim_config {
    cnt::RunConfig cfg;
};

struct cntsim_result {
    cnt::RunOutcome outcome;
};

namespace {

thread_local std::string t_last_error;

cntsim_status fail(cntsim_status code, const char* what) {
    t_last_error = what ? what : "unknown error";
    return code;
}

template <typename F>
cntsim_status guarded(F&& f) {
    try {
        f();
        t_last_error.clear();
        return CNTSIM_OK;
    } catch (const cnt::ParseError& e) {
        return fail(CNTSIM_ERR_IO, e.what());
    } catch (const cnt::ValidationError& e) {
        return fail(CNTSIM_ERR_VALIDATION, e.what());
    } catch (const std::invalid_argument& e) {
        return fail(CNTSIM_ERR_VALIDATION, e.what());
    } catch (const std::exception& e) {
        return fail(CNTSIM_ERR_NUMERICAL, e.what());
    }
}

}  // namespace

extern "C" {

cntsim_status cntsim_config_load(const char* path, cntsim_config** out) {
    if (!path || !out) return fail(CNTSIM_ERR_VALIDATION, "null argument");
    *out = nullptr;
    return guarded([&] { *out = new cntsim_config{cnt::load_config(path)}; });
}

cntsim_status cntsim_config_parse(const char* text, cntsim_config** out) {
    if (!text || !out) return fail(CNTSIM_ERR_VALIDATION, "null argument");
    *out = nullptr;
    return guarded([&] { *out = new cntsim_config{cnt::parse_config(text)}; });
}

cntsim_status cntsim_config_override(cntsim_config* cfg, const char* key_value) {
    if (!cfg || !key_value) return fail(CNTSIM_ERR_VALIDATION, "null argument");
    return guarded([&] { cnt::apply_override(cfg->cfg, key_value); });
}

void cntsim_config_free(cntsim_config* cfg) { delete cfg; }

cntsim_status cntsim_run(const cntsim_config* cfg, cntsim_result** out) {
    if (!cfg || !out) return fail(CNTSIM_ERR_VALIDATION, "null argument");
    *out = nullptr;
    return guarded([&] { *out = new cntsim_result{cnt::run_jobs(cfg->cfg)}; });
}

const char* cntsim_result_manifest_json(const cntsim_result* res) {
    return res ? res->outcome.manifest_json.c_str() : "";
}

int cntsim_result_exit_code(const cntsim_result* res) {
    return res ? res->outcome.exit_code : CNTSIM_ERR_VALIDATION;
}

void cntsim_result_free(cntsim_result* res) { delete res; }

const char* cntsim_last_error(void) { return t_last_error.c_str(); }

}  // extern "C"
