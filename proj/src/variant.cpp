#include "mcbyte/variant.hpp"

namespace mcbyte {

std::string variant_name(Variant v) {
    switch (v) {
        case Variant::Baseline: return "baseline";
        case Variant::A1: return "a1";
        case Variant::A2: return "a2";
        case Variant::A3: return "a3";
        case Variant::A4: return "a4";
        case Variant::A5: return "a5";
        case Variant::A6: return "a6";
        case Variant::McByte: return "mcbyte";
    }
    return "baseline";
}

std::optional<Variant> parse_variant(const std::string& name) {
    if (name == "baseline") return Variant::Baseline;
    if (name == "a1") return Variant::A1;
    if (name == "a2") return Variant::A2;
    if (name == "a3") return Variant::A3;
    if (name == "a4") return Variant::A4;
    if (name == "a5") return Variant::A5;
    if (name == "a6") return Variant::A6;
    if (name == "mcbyte") return Variant::McByte;
    return std::nullopt;
}

}  // namespace mcbyte
