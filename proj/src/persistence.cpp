#include "cpilink/persistence.hpp"

#include <fstream>

#include "cpilink/errors.hpp"
#include "cpilink/report_json.hpp"

namespace cpilink {

void atomic_write(const std::filesystem::path& path, const std::string& content) {
    std::filesystem::path tmp = path;
    tmp += ".tmp";
    {
        std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
        if (!out) throw IoError("cannot write " + tmp.string());
        out << content;
        if (!out) throw IoError("write failed for " + tmp.string());
    }
    std::error_code ec;
    std::filesystem::rename(tmp, path, ec);
    if (ec) throw IoError("cannot rename " + tmp.string() + " to " + path.string());
}

void save_model(const FittedModel& model, const std::filesystem::path& path) {
    atomic_write(path, model_to_json(model).dump(2) + "\n");
}

FittedModel load_model(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw IoError("cannot open " + path.string());
    nlohmann::json j;
    try {
        in >> j;
    } catch (const nlohmann::json::exception& e) {
        throw SchemaError("model file " + path.string() + ": " + e.what());
    }
    return model_from_json(j);
}

}  // namespace cpilink
