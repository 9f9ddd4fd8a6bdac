#include "tab3.h"

#include <cstdlib>
#include <cstring>
#include <new>
#include <string>

#include "tab3/io.hpp"

struct tab3_instance {
  tab3::InstanceFile file;
};

namespace {

char *dup_string(const std::string &s) {
  char *out = static_cast<char *>(std::malloc(s.size() + 1));
  if (out) std::memcpy(out, s.c_str(), s.size() + 1);
  return out;
}

void set_error(char **error, const std::string &message) {
  if (error) *error = dup_string(message);
}

tab3_status status_of(const tab3::Error &e) {
  switch (e.status()) {
    case tab3::Status::invalid_input:
      return TAB3_INVALID_INPUT;
    case tab3::Status::cap_exceeded:
      return TAB3_CAP_EXCEEDED;
    default:
      return TAB3_INTERNAL_ERROR;
  }
}

// Runs `fn`, translating exceptions into status codes + error strings.
template <typename Fn>
tab3_status guarded(char **error, Fn &&fn) {
  if (error) *error = nullptr;
  try {
    return fn();
  } catch (const tab3::Error &e) {
    set_error(error, e.what());
    return status_of(e);
  } catch (const std::bad_alloc &) {
    set_error(error, "out of memory");
    return TAB3_INTERNAL_ERROR;
  } catch (const std::exception &e) {
    set_error(error, std::string("internal error: ") + e.what());
    return TAB3_INTERNAL_ERROR;
  }
}

}  // namespace

extern "C" {

const char *tab3_version(void) { return "1.0.0"; }

tab3_status tab3_instance_parse(const char *json_text, tab3_instance **out,
                                char **error) {
  if (out) *out = nullptr;
  if (!json_text || !out) {
    set_error(error, "json_text and out must be non-NULL");
    return TAB3_INVALID_INPUT;
  }
  return guarded(error, [&] {
    auto *inst = new tab3_instance{tab3::parse_instance(json_text)};
    *out = inst;
    return TAB3_OK;
  });
}

tab3_status tab3_instance_to_json(const tab3_instance *inst, char **json_out,
                                  char **error) {
  if (json_out) *json_out = nullptr;
  if (!inst || !json_out) {
    set_error(error, "inst and json_out must be non-NULL");
    return TAB3_INVALID_INPUT;
  }
  return guarded(error, [&] {
    *json_out = dup_string(tab3::write_instance(inst->file));
    return *json_out ? TAB3_OK : TAB3_INTERNAL_ERROR;
  });
}

void tab3_instance_free(tab3_instance *inst) { delete inst; }

tab3_status tab3_run(const tab3_instance *inst, const char *command,
                     const tab3_options *options, char **report_out, char **error) {
  if (report_out) *report_out = nullptr;
  if (!command || !report_out) {
    set_error(error, "command and report_out must be non-NULL");
    return TAB3_INVALID_INPUT;
  }
  return guarded(error, [&] {
    tab3::RunOptions opts;
    if (options) {
      if (options->state_cap) opts.state_cap = options->state_cap;
      if (options->node_cap) opts.node_cap = options->node_cap;
      if (options->entry[0] || options->entry[1] || options->entry[2])
        opts.entry = tab3::EntryIndex{options->entry[0], options->entry[1],
                                      options->entry[2]};
      opts.embed = options->embed != 0;
    }
    const std::string report =
        tab3::run_command(command, inst ? &inst->file : nullptr, opts);
    *report_out = dup_string(report);
    return *report_out ? TAB3_OK : TAB3_INTERNAL_ERROR;
  });
}

tab3_status tab3_report_to_text(const char *report_json, char **text_out,
                                char **error) {
  if (text_out) *text_out = nullptr;
  if (!report_json || !text_out) {
    set_error(error, "report_json and text_out must be non-NULL");
    return TAB3_INVALID_INPUT;
  }
  return guarded(error, [&] {
    *text_out = dup_string(tab3::render_text(report_json));
    return *text_out ? TAB3_OK : TAB3_INTERNAL_ERROR;
  });
}

void tab3_string_free(char *s) { std::free(s); }

}  // extern "C"
