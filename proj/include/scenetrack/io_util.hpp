#pragma once

#include <stdexcept>
#include <string>

namespace scenetrack {

// File-level failures (missing, unreadable, corrupt); the CLI maps these to
// a distinct exit status from validation errors.
struct IoError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Writes to a sibling temp file and renames onto `path`, so readers never
// observe a torn file.  Throws IoError with the path on failure.
void atomic_write_file(const std::string& path, const std::string& bytes);

// Whole-file read; throws IoError with the path on failure.
std::string read_file(const std::string& path);

}  // namespace scenetrack
