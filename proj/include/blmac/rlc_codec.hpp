#pragma once

// Run-length coding of bit layers.
//
// Each layer is written as (S, ZRUN) pairs, S the pulse sign and ZRUN the
// number of zero positions since the previous pulse (or the layer start),
// followed by an EOR code. Layers are emitted LSB first, the order a
// right-shift accumulator consumes them.
//
// Weight memory byte layout:
//   bit 7     EOR flag (bits 6..0 written as 0)
//   bit 6     sign, 0 -> +1, 1 -> -1
//   bits 5..0 zrun
//
//   EOR = 0x80, (+,0) = 0x00, (-,0) = 0x40, (-,5) = 0x45

#include <blmac/blmac_core.hpp>
#include <blmac/errors.hpp>

#include <cstdint>
#include <span>
#include <sstream>
#include <string>
#include <vector>

namespace blmac {

inline constexpr int kMaxZrun = 63;
inline constexpr std::size_t kCodeCapacity = 256;

struct Code {
    bool eor = false;
    std::int8_t sign = 1;
    std::uint8_t zrun = 0;

    static Code pulse(int sign, int zrun) {
        return {false, static_cast<std::int8_t>(sign), static_cast<std::uint8_t>(zrun)};
    }
    static Code end_of_run() { return {true, 0, 0}; }

    bool operator==(const Code&) const = default;
};

struct CodeStream {
    std::vector<Code> codes;
    int n_layers = 0;

    std::size_t pulses() const {
        std::size_t n = 0;
        for (const auto& c : codes)
            n += !c.eor;
        return n;
    }

    bool operator==(const CodeStream&) const = default;
};

inline CodeStream encode(const LayerMatrix& layers, std::size_t positions) {
    CodeStream s;
    s.n_layers = layers.n_layers();
    s.codes.reserve(static_cast<std::size_t>(layers.total_pulses() + layers.n_layers()));
    for (int i = 0; i < layers.n_layers(); ++i) {
        std::size_t next = 0;
        for (const auto& p : layers.layer(i)) {
            if (p.index >= positions)
                throw CodecError("encode: pulse index " + std::to_string(p.index) + " in layer " +
                                 std::to_string(i) + " outside " + std::to_string(positions) + " positions");
            if (p.index < next)
                throw CodecError("encode: pulses out of order in layer " + std::to_string(i));
            const std::size_t zrun = p.index - next;
            if (zrun > static_cast<std::size_t>(kMaxZrun))
                throw CodecError("encode: zero run of " + std::to_string(zrun) + " in layer " +
                                 std::to_string(i) + " exceeds " + std::to_string(kMaxZrun));
            s.codes.push_back(Code::pulse(p.sign, static_cast<int>(zrun)));
            next = p.index + 1;
        }
        s.codes.push_back(Code::end_of_run());
    }
    return s;
}

/// Inverse of encode(). The layer count is the number of EOR codes, which
/// must match stream.n_layers.
inline LayerMatrix decode(const CodeStream& stream, std::size_t positions) {
    LayerMatrix m(stream.n_layers);
    int layer = 0;
    std::size_t pos = 0;
    for (const auto& c : stream.codes) {
        if (layer >= stream.n_layers)
            throw CodecError("decode: codes after the final EOR");
        if (c.eor) {
            ++layer;
            pos = 0;
            continue;
        }
        pos += c.zrun;
        if (pos >= positions)
            throw CodecError("decode: position " + std::to_string(pos) + " overflows layer " +
                             std::to_string(layer));
        m.layer(layer).push_back({pos, c.sign});
        ++pos;
    }
    if (layer != stream.n_layers)
        throw CodecError("decode: stream truncated, found " + std::to_string(layer) + " of " +
                         std::to_string(stream.n_layers) + " EOR codes");
    return m;
}

inline std::uint8_t pack_code(const Code& c) {
    if (c.eor)
        return 0x80;
    return static_cast<std::uint8_t>((c.sign < 0 ? 0x40 : 0x00) | (c.zrun & 0x3F));
}

inline Code unpack_code(std::uint8_t byte) {
    if (byte & 0x80)
        return Code::end_of_run();
    return Code::pulse((byte & 0x40) ? -1 : 1, byte & 0x3F);
}

inline std::vector<std::uint8_t> pack_memory_image(const CodeStream& stream,
                                                   std::size_t capacity = kCodeCapacity) {
    if (stream.codes.size() > capacity)
        throw CapacityError("memory image: " + std::to_string(stream.codes.size()) +
                            " codes exceed capacity of " + std::to_string(capacity));
    std::vector<std::uint8_t> image;
    image.reserve(stream.codes.size());
    for (const auto& c : stream.codes) {
        if (!c.eor && c.zrun > kMaxZrun)
            throw CodecError("memory image: zrun does not fit 6 bits");
        image.push_back(pack_code(c));
    }
    return image;
}

/// Layer count is recovered from the EOR codes in the image.
inline CodeStream unpack_memory_image(std::span<const std::uint8_t> image) {
    CodeStream s;
    s.codes.reserve(image.size());
    for (auto b : image) {
        s.codes.push_back(unpack_code(b));
        s.n_layers += s.codes.back().eor;
    }
    return s;
}

/// One code per line: `L<layer>: +<zrun>`, `L<layer>: -<zrun>` or `L<layer>: EOR`.
inline std::string disassemble(const CodeStream& stream) {
    std::ostringstream out;
    int layer = 0;
    for (const auto& c : stream.codes) {
        out << 'L' << layer << ": ";
        if (c.eor) {
            out << "EOR\n";
            ++layer;
        } else {
            out << (c.sign > 0 ? '+' : '-') << static_cast<int>(c.zrun) << '\n';
        }
    }
    return out.str();
}

} // namespace blmac
