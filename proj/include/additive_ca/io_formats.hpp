#pragma once

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <string>
#include <vector>

#include "additive_ca/complexity.hpp"
#include "additive_ca/engine.hpp"
#include "additive_ca/spectral.hpp"

namespace aca {

/// Rows are configurations in time order, row 0 on top; 1 renders black.
struct SpaceTimeImage {
    std::size_t width = 0;
    std::vector<Configuration> rows;

    static SpaceTimeImage from_run(const EvolutionRun& run);
};

/// Portable bitmap: text P1 or packed P4 (rows padded with zero bits to a byte).
std::string emit_pbm(const SpaceTimeImage& img, bool binary);

/// Real number with 12 significant digits, independent of the C locale.
std::string format_real(double value);

/// Header `t,f,S`; rows in ascending (t, f).
std::string emit_csv(const SpectrumSeries& spectra);
/// Header `t,c_lz`.
std::string emit_csv(const ComplexityTrace& trace);
/// JSON array of {t_start, t_end, duration, mean}.
std::string emit_plateaus_json(const PlateauReport& report);

// Run container, all integers little-endian:
//   "ACAR" | u32 version | u64 N | u64 r | u64 horizon | u64 stride | u64 count
//   count x ( u64 t | ceil(N/8) bytes, cell i at bit i%8 of byte i/8 )
inline constexpr std::uint32_t run_format_version = 1;

class LoadError : public Error {
public:
    enum class Kind { bad_magic, version_mismatch, truncated, invalid_size, inconsistent };

    LoadError(Kind kind, const std::string& what) : Error(what), kind_(kind) {}
    Kind kind() const noexcept { return kind_; }

private:
    Kind kind_;
};

std::string save_run(const EvolutionRun& run);
EvolutionRun load_run(std::string_view bytes);

void save_run(const EvolutionRun& run, const std::filesystem::path& path);
EvolutionRun load_run(const std::filesystem::path& path);

/// Writes `contents` to `path` in binary mode, creating parent directories.
void write_file(const std::filesystem::path& path, std::string_view contents);
std::string read_file(const std::filesystem::path& path);

} // namespace aca
