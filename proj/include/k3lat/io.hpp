#pragma once

#include "k3lat/group.hpp"
#include "k3lat/standard.hpp"

#include "json.hpp"

#include <optional>
#include <string>

namespace k3lat {

using Json = nlohmann::ordered_json;

// Malformed input. line/column are 1-based and 0 when the problem is structural rather than syntactic.
class ParseError : public Error {
public:
    ParseError(const std::string& what, std::size_t line, std::size_t column, std::string path = "")
        : Error("parse-error", where(line, column, path) + what), line_(line), column_(column), path_(std::move(path)) {}
    std::size_t line() const { return line_; }
    std::size_t column() const { return column_; }
    const std::string& path() const { return path_; }

private:
    static std::string where(std::size_t line, std::size_t column, const std::string& path) {
        std::string s;
        if (line) s += "line " + std::to_string(line) + ", column " + std::to_string(column) + ": ";
        if (!path.empty()) s += "at " + path + ": ";
        return s;
    }
    std::size_t line_, column_;
    std::string path_;
};

// Syntax errors carry line and column.
Json parse_json(const std::string& text);
Json read_json_file(const std::string& path);

// Integers are emitted as JSON numbers when they fit in 64 bits and as decimal strings otherwise;
// both forms are accepted on input.
Json to_json(const Int& x);
Json to_json(const Rat& x);   // "a/b", or an integer when b = 1
Json to_json(const IntMatrix& m);
Json to_json(const RatMatrix& m);
Json to_json(const IntVector& v);

Int int_from_json(const Json& j, const std::string& path = "");
Rat rat_from_json(const Json& j, const std::string& path = "");
IntMatrix int_matrix_from_json(const Json& j, const std::string& path = "");
RatMatrix rat_matrix_from_json(const Json& j, const std::string& path = "");

// { "rank": n, "gram": [[...]] }
Json lattice_to_json(const Lattice& l);
Lattice lattice_from_json(const Json& j);
// lattice fields plus "basis"
Json sublattice_to_json(const Sublattice& s);
Sublattice sublattice_from_json(const Json& j);
// lattice fields plus "name" and "distinguished"
Json named_lattice_to_json(const NamedLattice& l);
NamedLattice named_lattice_from_json(const Json& j);
// { "projectors": [rational matrices] }
Json isotypic_to_json(const IsotypicData& d);
IsotypicData isotypic_from_json(const Json& j);

// { "ambient": <lattice>, "generators": [...] } with optional "isotypic"
struct GroupFile {
    IsometryGroup group;
    std::optional<IsotypicData> isotypic;
};
Json group_to_json(const IsometryGroup& g, const std::optional<IsotypicData>& iso = std::nullopt);
GroupFile group_from_json(const Json& j);

}  // namespace k3lat
