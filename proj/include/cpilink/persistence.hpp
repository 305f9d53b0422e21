#pragma once

#include <filesystem>

#include "cpilink/model.hpp"

namespace cpilink {

// Versioned JSON document; load(save(m)) == m with reals reproduced exactly.
void save_model(const FittedModel& model, const std::filesystem::path& path);
FittedModel load_model(const std::filesystem::path& path);

// Write-then-rename so partially written artifacts are never observed.
void atomic_write(const std::filesystem::path& path, const std::string& content);

}  // namespace cpilink
