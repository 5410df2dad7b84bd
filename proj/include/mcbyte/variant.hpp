#pragma once

#include <optional>
#include <string>

namespace mcbyte {

// Ablation ladder. A1/A2 replace IoU costs with the mask signal outright;
// A3..A6 fuse the mask cue into ambiguous/isolated entries under an
// increasing number of gating conditions; McByte = A6 + camera-motion
// compensation.
enum class Variant {
    Baseline,
    A1,
    A2,
    A3,
    A4,
    A5,
    A6,
    McByte,
};

inline bool uses_mask_cue(Variant v) { return v != Variant::Baseline; }
inline bool uses_entry_classes(Variant v) {
    return v == Variant::A3 || v == Variant::A4 || v == Variant::A5 ||
           v == Variant::A6 || v == Variant::McByte;
}
inline bool uses_cmc(Variant v) { return v == Variant::McByte; }

// Number of gating conditions (1..4) a fused entry must satisfy.
inline int required_conditions(Variant v) {
    switch (v) {
        case Variant::A3: return 1;
        case Variant::A4: return 2;
        case Variant::A5: return 3;
        case Variant::A6:
        case Variant::McByte: return 4;
        default: return 0;
    }
}

std::string variant_name(Variant v);
std::optional<Variant> parse_variant(const std::string& name);

}  // namespace mcbyte
