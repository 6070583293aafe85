#include "pgq/family.hpp"

#include <algorithm>
#include <stdexcept>

namespace pgq {

Sign parse_sign(const std::string& text) {
    if (text == "+" || text == "plus" || text == "Plus") return Sign::Plus;
    if (text == "-" || text == "minus" || text == "Minus") return Sign::Minus;
    throw std::invalid_argument("sign must be '+' or '-', got '" + text + "'");
}

bool HyperplaneFamily::contains(const Hyperplane& h) const {
    return std::binary_search(members.begin(), members.end(), h);
}

HyperplaneFamily make_family(ProjSpace space, Sign sign, std::vector<Hyperplane> members) {
    if (space.k % 2 == 0) throw WrongDimension("hyperplane families live in odd projective dimension");
    if (members.empty()) throw std::invalid_argument("hyperplane family must be nonempty");
    for (const auto& h : members) {
        if (h.covector.size() != static_cast<std::size_t>(space.k) + 1)
            throw WrongDimension("member covector has wrong length");
        for (auto x : h.covector)
            if (x.value >= space.q()) throw std::invalid_argument("member coordinate out of field range");
        if (canonicalize(space.field, h.covector) != h.covector)
            throw std::invalid_argument("member covector is not canonical");
    }
    std::sort(members.begin(), members.end());
    if (std::adjacent_find(members.begin(), members.end()) != members.end())
        throw std::invalid_argument("duplicate member in hyperplane family");
    return {std::move(space), sign, std::move(members)};
}

} // namespace pgq
