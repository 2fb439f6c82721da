#pragma once

#include <optional>
#include <string>

#include "affsim/spec_io.hpp"
#include "affsim/witness.hpp"

namespace affsim {

enum class Level { Fast, Full };

/// Process exit codes of a run.
enum class ExitCode : int {
    Ok = 0,
    VerificationFailed = 1,
    InputError = 2,
    InternalError = 3,
};

struct RunConfig {
    std::optional<std::string> spec_inline;
    std::optional<std::string> spec_file;
    /// Overrides the field named in a JSON spec; Q when neither is given.
    std::optional<FieldChoice> field;
    /// "default" or "file:<path>".
    std::string lambda = "default";
    LeadingFactor leading = LeadingFactor::Standard;
    Level level = Level::Fast;
    /// Defaults to 2 max(S); must lie in [1, 10 max(S)].
    std::optional<int> probe_max;
    std::optional<std::string> out_path;
    unsigned threads = 1;
};

struct RunResult {
    ExitCode exit_code = ExitCode::Ok;
    /// Empty when the input could not be parsed.
    OrderedJson report;
    /// Human-readable summary or the error message.
    std::string summary;
};

/// Parse, close, witness (full level), census. Writes the report to
/// config.out_path (temp file + rename) whenever one was produced.
RunResult run(const RunConfig& config);

/// Writes text to path through a sibling temporary file and a rename.
void write_atomically(const std::string& path, const std::string& text);

}  // namespace affsim
