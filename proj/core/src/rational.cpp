#include "fano/rational.hpp"

namespace fano {

Rational parse_rational(const std::string &s)
{
    try {
        std::size_t slash = s.find('/');
        std::size_t used = 0;
        if (slash == std::string::npos) {
            Coord n = std::stoll(s, &used);
            if (used != s.size())
                throw error("trailing junk");
            return Rational{n};
        }
        Coord n = std::stoll(s.substr(0, slash), &used);
        if (used != slash)
            throw error("trailing junk");
        std::string den = s.substr(slash + 1);
        Coord d = std::stoll(den, &used);
        if (used != den.size())
            throw error("trailing junk");
        return Rational{n, d};
    } catch (const error &) {
        throw error("malformed rational '" + s + "'");
    } catch (const std::exception &) {
        throw error("malformed rational '" + s + "'");
    }
}

} // namespace fano
