#pragma once

#include "dualwave/nie.hpp"
#include "dualwave/petviashvili.hpp"
#include "dualwave/types.hpp"
#include "dualwave/verify.hpp"

#include <json.hpp>

#include <filesystem>
#include <string>

namespace dualwave {

// Profile CSV with columns x,f,w,u_inf, 17 significant digits (round-trip
// exact). Files are written atomically (temp + rename).
void write_profile_csv(const std::filesystem::path& path, const WaveProfile& profile);
WaveProfile read_profile_csv(const std::filesystem::path& path);

// Dual-field CSV with columns x,<name> where name is "lambda" or "nu".
void write_dual_csv(const std::filesystem::path& path, const Vector& x, const Vector& field,
                    const std::string& name);

void atomic_write(const std::filesystem::path& path, const std::string& content);
void write_json(const std::filesystem::path& path, const nlohmann::json& j);
nlohmann::json read_json(const std::filesystem::path& path);

nlohmann::json to_json(const SolverReport& rep);
nlohmann::json to_json(const QnReport& rep);
nlohmann::json to_json(const SpectralReport& rep);
nlohmann::json to_json(const VerificationReport& rep);
nlohmann::json to_json(const PvResult& rep);

}  // namespace dualwave
