#ifndef KTS_IO_HPP
#define KTS_IO_HPP

#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#include <json.hpp>

#include "kts/basis.hpp"
#include "kts/solver.hpp"

namespace kts {

/// Failure reading a system file. `kind` separates the cases callers act on.
class SystemFileError : public Error {
public:
    enum class Kind { missing_file, syntax, shape, unknown_basis };

    SystemFileError(Kind kind, const std::string& what) : Error(what), kind_(kind) {}
    Kind kind() const { return kind_; }

private:
    Kind kind_;
};

using ordered_json = nlohmann::ordered_json;

inline BivariateSystem system_from_json(const nlohmann::json& j)
{
    using K = SystemFileError::Kind;
    if (!j.is_object()) throw SystemFileError(K::syntax, "system file must hold a JSON object");
    for (const char* key : {"basis", "m", "n", "coeffs"}) {
        if (!j.contains(key)) throw SystemFileError(K::syntax, std::string("missing field '") + key + "'");
    }
    if (!j["basis"].is_string()) throw SystemFileError(K::syntax, "'basis' must be a string");
    const auto tag = j["basis"].get<std::string>();
    const auto basis = parse_basis(tag);
    if (!basis) throw SystemFileError(K::unknown_basis, "unknown basis tag '" + tag + "'");
    if (!j["m"].is_number_integer() || !j["n"].is_number_integer()) {
        throw SystemFileError(K::syntax, "'m' and 'n' must be integers");
    }
    const int m = j["m"].get<int>();
    const int n = j["n"].get<int>();
    if (m < 0 || n < 0) throw SystemFileError(K::shape, "degrees must be nonnegative");
    const auto& rows = j["coeffs"];
    if (!rows.is_array()) throw SystemFileError(K::syntax, "'coeffs' must be an array");
    if (rows.size() != static_cast<std::size_t>(m + 1)) {
        throw SystemFileError(K::shape, "expected " + std::to_string(m + 1) + " coefficient rows, got " +
                                            std::to_string(rows.size()));
    }
    std::vector<Vec2> c;
    for (std::size_t i = 0; i < rows.size(); ++i) {
        const auto& row = rows[i];
        if (!row.is_array()) throw SystemFileError(K::syntax, "coefficient row must be an array");
        if (row.size() != static_cast<std::size_t>(n + 1)) {
            throw SystemFileError(K::shape, "row " + std::to_string(i) + ": expected " + std::to_string(n + 1) +
                                                " entries, got " + std::to_string(row.size()));
        }
        for (const auto& pair : row) {
            if (!pair.is_array() || pair.size() != 2 || !pair[0].is_number() || !pair[1].is_number()) {
                throw SystemFileError(K::shape, "each coefficient must be an [x, y] pair of numbers");
            }
            c.push_back({pair[0].get<double>(), pair[1].get<double>()});
        }
    }
    return BivariateSystem(*basis, m, n, std::move(c));
}

inline ordered_json system_to_json(const BivariateSystem& f)
{
    ordered_json rows = ordered_json::array();
    for (int i = 0; i <= f.m(); ++i) {
        ordered_json row = ordered_json::array();
        for (int j = 0; j <= f.n(); ++j) row.push_back({f(i, j).x, f(i, j).y});
        rows.push_back(std::move(row));
    }
    ordered_json out;
    out["basis"] = std::string(to_string(f.basis()));
    out["m"] = f.m();
    out["n"] = f.n();
    out["coeffs"] = std::move(rows);
    return out;
}

// Canonical encoding: compact JSON followed by a newline.
inline std::string format_system(const BivariateSystem& f) { return system_to_json(f).dump() + "\n"; }

inline BivariateSystem parse_system_text(const std::string& text)
{
    nlohmann::json j;
    try {
        j = nlohmann::json::parse(text);
    } catch (const nlohmann::json::parse_error& e) {
        throw SystemFileError(SystemFileError::Kind::syntax, e.what());
    }
    return system_from_json(j);
}

inline std::string read_file(const std::filesystem::path& path)
{
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        throw SystemFileError(SystemFileError::Kind::missing_file, "cannot open '" + path.string() + "'");
    }
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

inline BivariateSystem parse_system(const std::filesystem::path& path) { return parse_system_text(read_file(path)); }

inline void write_text(const std::filesystem::path& path, const std::string& text)
{
    std::ofstream out(path, std::ios::binary);
    if (!out) throw Error("cannot write '" + path.string() + "'");
    out << text;
    if (!out) throw Error("write failed for '" + path.string() + "'");
}

inline void write_system(const std::filesystem::path& path, const BivariateSystem& f)
{
    write_text(path, format_system(f));
}

inline ordered_json report_to_json(const SolveReport& r)
{
    ordered_json zeros = ordered_json::array();
    for (const auto& z : r.zeros) {
        ordered_json e;
        e["x"] = z.location.x;
        e["y"] = z.location.y;
        e["rho_star"] = z.rho_star;
        e["omega_star"] = z.omega_star;
        e["newton_iterations"] = z.newton_iterations;
        zeros.push_back(std::move(e));
    }
    ordered_json unresolved = ordered_json::array();
    for (const auto& p : r.unresolved_patches) {
        unresolved.push_back({{"center", {p.center.x, p.center.y}}, {"half_width", p.half_width}});
    }
    ordered_json out;
    out["zeros"] = std::move(zeros);
    out["patches_examined"] = r.patches_examined;
    out["smallest_width"] = r.smallest_width;
    out["exclusion_passes"] = r.exclusion_passes;
    out["kantorovich_passes"] = r.kantorovich_passes;
    out["skipped_subsumed"] = r.skipped_subsumed;
    out["unresolved"] = std::move(unresolved);
    if (r.cond_estimate) {
        out["cond_estimate"] = *r.cond_estimate;
        out["cond_estimate_kind"] = "estimate (real zeros only)";
    }
    return out;
}

inline std::string format_report(const SolveReport& r) { return report_to_json(r).dump(2) + "\n"; }

} // namespace kts

#endif // KTS_IO_HPP
