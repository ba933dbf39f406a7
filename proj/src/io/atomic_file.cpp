#include "biocell/io/atomic_file.hpp"

#include <memory>
#include <stdexcept>
#include <system_error>

namespace biocell::io {

AtomicFile::AtomicFile(std::filesystem::path path) : path_(std::move(path)) {
    tmp_ = path_;
    tmp_ += ".tmp";
    out_.open(tmp_, std::ios::binary | std::ios::trunc);
    if (!out_) throw std::runtime_error("cannot open '" + path_.string() + "' for writing");
}

AtomicFile::~AtomicFile() {
    if (committed_) return;
    out_.close();
    std::error_code ec;
    std::filesystem::remove(tmp_, ec);
}

void AtomicFile::commit() {
    out_.flush();
    if (!out_) throw std::runtime_error("write to '" + path_.string() + "' failed");
    out_.close();
    std::error_code ec;
    std::filesystem::rename(tmp_, path_, ec);
    if (ec) throw std::runtime_error("cannot move output into '" + path_.string() + "': " + ec.message());
    committed_ = true;
}

void write_file(const std::filesystem::path& path, const std::string& contents) {
    AtomicFile file(path);
    file.stream() << contents;
    file.commit();
}

void write_all(const std::vector<PendingOutput>& outputs) {
    std::vector<std::unique_ptr<AtomicFile>> staged;
    for (const auto& out : outputs) {
        staged.push_back(std::make_unique<AtomicFile>(out.path));
        staged.back()->stream() << out.contents;
    }
    std::size_t done = 0;
    try {
        for (; done < staged.size(); ++done) staged[done]->commit();
    } catch (...) {
        std::error_code ec;
        for (std::size_t i = 0; i < done; ++i) std::filesystem::remove(outputs[i].path, ec);
        throw;
    }
}

}  // namespace biocell::io
