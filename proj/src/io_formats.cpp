#include "additive_ca/io_formats.hpp"

#include <algorithm>
#include <array>
#include <charconv>
#include <fstream>
#include <iterator>
#include <sstream>

#include <json.hpp>

namespace aca {

namespace {

constexpr std::array<char, 4> kMagic = {'A', 'C', 'A', 'R'};

void put_u32(std::string& out, std::uint32_t v)
{
    for (int i = 0; i < 4; ++i) {
        out.push_back(static_cast<char>((v >> (8 * i)) & 0xFFU));
    }
}

void put_u64(std::string& out, std::uint64_t v)
{
    for (int i = 0; i < 8; ++i) {
        out.push_back(static_cast<char>((v >> (8 * i)) & 0xFFU));
    }
}

class Reader {
public:
    explicit Reader(std::string_view bytes) : bytes_(bytes) {}

    std::string_view take(std::size_t count, const char* what)
    {
        if (bytes_.size() - pos_ < count) {
            throw LoadError(LoadError::Kind::truncated,
                            std::string("run file truncated while reading ") + what);
        }
        auto out = bytes_.substr(pos_, count);
        pos_ += count;
        return out;
    }

    std::uint64_t u64(const char* what) { return little_endian(take(8, what)); }
    std::uint32_t u32(const char* what) { return static_cast<std::uint32_t>(little_endian(take(4, what))); }
    std::size_t remaining() const { return bytes_.size() - pos_; }

private:
    static std::uint64_t little_endian(std::string_view raw)
    {
        std::uint64_t v = 0;
        for (std::size_t i = raw.size(); i-- > 0;) {
            v = (v << 8) | static_cast<unsigned char>(raw[i]);
        }
        return v;
    }

    std::string_view bytes_;
    std::size_t pos_ = 0;
};

} // namespace

SpaceTimeImage SpaceTimeImage::from_run(const EvolutionRun& run)
{
    SpaceTimeImage img;
    img.width = run.size();
    img.rows.reserve(run.snapshots.size());
    for (const auto& [t, c] : run.snapshots) {
        img.rows.push_back(c);
    }
    return img;
}

std::string emit_pbm(const SpaceTimeImage& img, bool binary)
{
    std::string out = binary ? "P4\n" : "P1\n";
    out += std::to_string(img.width) + " " + std::to_string(img.rows.size()) + "\n";
    for (const auto& row : img.rows) {
        if (row.size() != img.width) {
            throw SizeMismatch("space-time image row width differs from image width");
        }
        if (binary) {
            for (std::size_t byte_start = 0; byte_start < img.width; byte_start += 8) {
                unsigned char byte = 0;
                for (std::size_t b = 0; b < 8; ++b) {
                    const std::size_t i = byte_start + b;
                    if (i < img.width && row.get(i)) {
                        byte |= static_cast<unsigned char>(0x80U >> b);
                    }
                }
                out.push_back(static_cast<char>(byte));
            }
        } else {
            out += row.to_string();
            out.push_back('\n');
        }
    }
    return out;
}

std::string format_real(double value)
{
    std::array<char, 64> buf{};
    const auto res = std::to_chars(buf.data(), buf.data() + buf.size(), value,
                                   std::chars_format::general, 12);
    return std::string(buf.data(), res.ptr);
}

std::string emit_csv(const SpectrumSeries& spectra)
{
    std::string out = "t,f,S\n";
    for (const auto& [t, s] : spectra) {
        const std::string prefix = std::to_string(t) + ",";
        for (std::size_t f = 0; f < s.size(); ++f) {
            out += prefix;
            out += std::to_string(f);
            out.push_back(',');
            out += format_real(s.power[f]);
            out.push_back('\n');
        }
    }
    return out;
}

std::string emit_csv(const ComplexityTrace& trace)
{
    std::string out = "t,c_lz\n";
    for (const auto& p : trace.values) {
        out += std::to_string(p.t);
        out.push_back(',');
        out += std::to_string(p.complexity);
        out.push_back('\n');
    }
    return out;
}

std::string emit_plateaus_json(const PlateauReport& report)
{
    nlohmann::ordered_json arr = nlohmann::ordered_json::array();
    for (const auto& p : report.intervals) {
        arr.push_back({{"t_start", p.t_start},
                       {"t_end", p.t_end},
                       {"duration", p.duration},
                       {"mean", p.mean}});
    }
    return arr.dump(2) + "\n";
}

std::string save_run(const EvolutionRun& run)
{
    std::string out(kMagic.begin(), kMagic.end());
    put_u32(out, run_format_version);
    put_u64(out, run.size());
    put_u64(out, run.rule.r());
    put_u64(out, run.horizon);
    put_u64(out, run.stride);
    put_u64(out, run.snapshots.size());
    const std::size_t bytes_per_row = (run.size() + 7) / 8;
    for (const auto& [t, c] : run.snapshots) {
        put_u64(out, t);
        const auto words = c.words();
        for (std::size_t b = 0; b < bytes_per_row; ++b) {
            out.push_back(static_cast<char>((words[b / 8] >> (8 * (b % 8))) & 0xFFU));
        }
    }
    return out;
}

EvolutionRun load_run(std::string_view bytes)
{
    using Kind = LoadError::Kind;
    Reader in(bytes);
    const auto magic = in.take(4, "magic");
    if (!std::equal(kMagic.begin(), kMagic.end(), magic.begin())) {
        throw LoadError(Kind::bad_magic, "not a run file (bad magic)");
    }
    const std::uint32_t version = in.u32("version");
    if (version != run_format_version) {
        throw LoadError(Kind::version_mismatch, "unsupported run file version " + std::to_string(version));
    }
    const std::uint64_t size = in.u64("size");
    const std::uint64_t r = in.u64("rule");
    const std::uint64_t horizon = in.u64("horizon");
    const std::uint64_t stride = in.u64("stride");
    const std::uint64_t count = in.u64("snapshot count");
    if (size == 0) {
        throw LoadError(Kind::invalid_size, "run file declares array size N = 0");
    }
    if (r == 0 || stride == 0) {
        throw LoadError(Kind::inconsistent, "run file declares r = 0 or stride = 0");
    }
    const std::uint64_t bytes_per_row = (size + 7) / 8;
    if (count == 0) {
        throw LoadError(Kind::inconsistent, "run file declares no snapshots");
    }
    if (count > in.remaining() / (8 + bytes_per_row)) {
        throw LoadError(Kind::truncated, "run file shorter than its declared snapshots");
    }

    std::map<std::uint64_t, Configuration> snapshots;
    std::uint64_t previous = 0;
    for (std::uint64_t s = 0; s < count; ++s) {
        const std::uint64_t t = in.u64("snapshot time");
        if ((s == 0 && t != 0) || (s > 0 && t <= previous) || t > horizon) {
            throw LoadError(Kind::inconsistent, "snapshot times must start at 0, ascend, and not exceed the horizon");
        }
        previous = t;
        const auto raw = in.take(bytes_per_row, "snapshot bits");
        std::vector<Configuration::Word> words((size + 63) / 64, 0);
        for (std::size_t b = 0; b < bytes_per_row; ++b) {
            words[b / 8] |= Configuration::Word{static_cast<unsigned char>(raw[b])} << (8 * (b % 8));
        }
        Configuration c = Configuration::from_words(size, words);
        if (!std::equal(words.begin(), words.end(), c.words().begin())) {
            throw LoadError(Kind::inconsistent, "snapshot padding bits beyond N are not zero");
        }
        snapshots.emplace(t, std::move(c));
    }
    if (in.remaining() != 0) {
        throw LoadError(Kind::inconsistent, "trailing bytes after the last snapshot");
    }
    Configuration initial = snapshots.at(0);
    return EvolutionRun{RuleParams(r), std::move(initial), horizon, stride, std::move(snapshots)};
}

void save_run(const EvolutionRun& run, const std::filesystem::path& path)
{
    write_file(path, save_run(run));
}

EvolutionRun load_run(const std::filesystem::path& path)
{
    const std::string bytes = read_file(path);
    return load_run(std::string_view(bytes));
}

void write_file(const std::filesystem::path& path, std::string_view contents)
{
    if (path.has_parent_path()) {
        std::filesystem::create_directories(path.parent_path());
    }
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) {
        throw Error("cannot open " + path.string() + " for writing");
    }
    out.write(contents.data(), static_cast<std::streamsize>(contents.size()));
    if (!out) {
        throw Error("failed writing " + path.string());
    }
}

std::string read_file(const std::filesystem::path& path)
{
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        throw Error("cannot open " + path.string() + " for reading");
    }
    return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

} // namespace aca
