/* vim: set sw=4 sts=4 et foldmethod=syntax : */

#include <johnson/relation_symbol.hh>
#include <johnson/errors.hh>

#include <cctype>
#include <string_view>

using std::string;
using std::uint64_t;

namespace johnson
{
    namespace
    {
        auto all_digits(std::string_view s) -> bool
        {
            if (s.empty() || s.size() > 6)
                return false;
            for (char c : s)
                if (! std::isdigit(static_cast<unsigned char>(c)))
                    return false;
            return true;
        }

        auto to_int(std::string_view s) -> int
        {
            return std::stoi(string(s));
        }

        auto bad_symbol(const string & text) -> InvalidInput
        {
            return InvalidInput("unknown relation symbol '" + text + "'");
        }

        auto low_bits(int upto) -> uint64_t
        {
            // sizes 0..upto inclusive
            if (upto < 0)
                return 0;
            if (upto >= 63)
                return ~uint64_t{0};
            return (uint64_t{1} << (upto + 1)) - 1;
        }
    }

    auto RelationSymbol::parse(const string & text) -> RelationSymbol
    {
        std::string_view t = text;
        if (t == "E")
            return edge();
        if (t == "N")
            return near();
        if (t == "O")
            return overlap();
        if (t == "eq")
            return eq();
        if (t == "neq")
            return neq();

        if (t.starts_with("SI{") && t.ends_with("}")) {
            auto body = t.substr(3, t.size() - 4);
            uint64_t sizes = 0;
            while (! body.empty()) {
                auto comma = body.find(',');
                auto item = body.substr(0, comma);
                if (! all_digits(item) || to_int(item) > 63)
                    throw bad_symbol(text);
                sizes |= uint64_t{1} << to_int(item);
                if (comma == std::string_view::npos)
                    break;
                body = body.substr(comma + 1);
                if (body.empty())
                    throw bad_symbol(text);
            }
            if (sizes == 0)
                throw InvalidInput("relation symbol '" + text + "' has an empty index set");
            return union_of(sizes);
        }

        if (t.starts_with("Sle") && all_digits(t.substr(3)))
            return at_most(to_int(t.substr(3)));
        if (t.starts_with("Sge") && all_digits(t.substr(3)))
            return at_least(to_int(t.substr(3)));
        if (t.starts_with("C") && all_digits(t.substr(1)))
            return core(to_int(t.substr(1)));

        if (t.starts_with("S")) {
            auto rest = t.substr(1);
            auto underscore = rest.find('_');
            if (underscore == std::string_view::npos) {
                if (all_digits(rest))
                    return exact(to_int(rest));
            }
            else if (all_digits(rest.substr(0, underscore)) && all_digits(rest.substr(underscore + 1)))
                return sunflower(to_int(rest.substr(0, underscore)), to_int(rest.substr(underscore + 1)));
        }

        throw bad_symbol(text);
    }

    auto RelationSymbol::to_string() const -> string
    {
        switch (kind) {
            case RelationKind::Exact: return "S" + std::to_string(index);
            case RelationKind::AtMost: return "Sle" + std::to_string(index);
            case RelationKind::AtLeast: return "Sge" + std::to_string(index);
            case RelationKind::Sunflower: return "S" + std::to_string(width) + "_" + std::to_string(index);
            case RelationKind::Core: return "C" + std::to_string(index);
            case RelationKind::Edge: return "E";
            case RelationKind::Near: return "N";
            case RelationKind::Overlap: return "O";
            case RelationKind::Eq: return "eq";
            case RelationKind::Neq: return "neq";
            case RelationKind::Union: {
                string result = "SI{";
                bool first = true;
                for (int j = 0 ; j < 64 ; ++j)
                    if ((sizes >> j) & 1) {
                        if (! first)
                            result += ",";
                        first = false;
                        result += std::to_string(j);
                    }
                return result + "}";
            }
        }
        return "?";
    }

    auto RelationSymbol::arity() const -> int
    {
        switch (kind) {
            case RelationKind::Sunflower: return width;
            case RelationKind::Core: return 4;
            default: return 2;
        }
    }

    auto RelationSymbol::validate(int k) const -> void
    {
        auto fail = [&] (const string & why) {
            throw InvalidInput("relation symbol " + to_string() + " invalid for k=" + std::to_string(k) + ": " + why);
        };
        switch (kind) {
            case RelationKind::Exact:
            case RelationKind::AtMost:
            case RelationKind::AtLeast:
            case RelationKind::Core:
                if (index < 0 || index > k)
                    fail("index outside 0..k");
                break;
            case RelationKind::Sunflower:
                if (index < 0 || index > k)
                    fail("index outside 0..k");
                if (width < 2)
                    fail("arity below 2");
                break;
            case RelationKind::Edge:
                if (k < 1)
                    fail("E needs k >= 1");
                break;
            case RelationKind::Near:
            case RelationKind::Overlap:
                if (k < 2)
                    fail("needs k >= 2");
                break;
            case RelationKind::Union:
                if (sizes == 0)
                    fail("empty index set");
                if (k < 63 && (sizes >> (k + 1)) != 0)
                    fail("index set exceeds k");
                break;
            case RelationKind::Eq:
            case RelationKind::Neq:
                break;
        }
    }

    auto RelationSymbol::allowed_sizes(int k) const -> uint64_t
    {
        auto bit = [] (int j) -> uint64_t { return (j < 0 || j > 63) ? 0 : uint64_t{1} << j; };
        switch (kind) {
            case RelationKind::Exact: return bit(index);
            case RelationKind::AtMost: return low_bits(index);
            case RelationKind::AtLeast: return low_bits(k) & ~low_bits(index - 1);
            case RelationKind::Edge: return bit(k - 1);
            case RelationKind::Near: return bit(k - 2);
            case RelationKind::Overlap: return bit(k - 1) | bit(k - 2);
            case RelationKind::Union: return sizes & low_bits(k);
            case RelationKind::Eq: return bit(k);
            case RelationKind::Neq: return low_bits(k - 1);
            case RelationKind::Sunflower:
                return width == 2 ? bit(index) : 0;
            case RelationKind::Core:
                return 0;
        }
        return 0;
    }

    auto same_semantics(const RelationSymbol & a, const RelationSymbol & b, int k) -> bool
    {
        bool a_bin = a.is_binary() || (a.kind == RelationKind::Sunflower && a.width == 2);
        bool b_bin = b.is_binary() || (b.kind == RelationKind::Sunflower && b.width == 2);
        if (a_bin && b_bin)
            return a.allowed_sizes(k) == b.allowed_sizes(k);
        if (a_bin || b_bin)
            return false;
        if (a.kind != b.kind || a.index != b.index)
            return false;
        return a.kind != RelationKind::Sunflower || a.width == b.width;
    }
}
