#pragma once

#include <filesystem>
#include <fstream>
#include <string>
#include <vector>

namespace biocell::io {

/// Writes to "<path>.tmp" and renames over `path` on commit(). If the object is
/// destroyed without commit() the temporary file is removed, so a failed
/// command never leaves a partial output behind.
class AtomicFile {
public:
    explicit AtomicFile(std::filesystem::path path);
    ~AtomicFile();

    AtomicFile(const AtomicFile&) = delete;
    AtomicFile& operator=(const AtomicFile&) = delete;

    std::ofstream& stream() { return out_; }
    void commit();

private:
    std::filesystem::path path_;
    std::filesystem::path tmp_;
    std::ofstream out_;
    bool committed_ = false;
};

/// Convenience: atomically replaces `path` with `contents`.
void write_file(const std::filesystem::path& path, const std::string& contents);

struct PendingOutput {
    std::filesystem::path path;
    std::string contents;
};

/// Writes every output or none: all files are staged first, and any that were
/// already moved into place are deleted again if a later one fails.
void write_all(const std::vector<PendingOutput>& outputs);

}  // namespace biocell::io
