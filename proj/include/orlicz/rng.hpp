#pragma once

#include <array>
#include <cstdint>

namespace orlicz {

/// Philox4x32-10 counter-based generator (Salmon et al. 2011): a keyed bijection
/// of a 128-bit counter, so any (key, counter) block is computable independently.
class Philox4x32
{
public:
    using Counter = std::array<std::uint32_t, 4>;
    using Key = std::array<std::uint32_t, 2>;

    static Counter block(Counter c, Key k)
    {
        for (int r = 0; r < 10; ++r) {
            if (r > 0) {
                k[0] += 0x9E3779B9u;
                k[1] += 0xBB67AE85u;
            }
            const std::uint64_t p0 = std::uint64_t{0xD2511F53u} * c[0];
            const std::uint64_t p1 = std::uint64_t{0xCD9E8D57u} * c[2];
            const auto hi0 = static_cast<std::uint32_t>(p0 >> 32), lo0 = static_cast<std::uint32_t>(p0);
            const auto hi1 = static_cast<std::uint32_t>(p1 >> 32), lo1 = static_cast<std::uint32_t>(p1);
            c = {hi1 ^ c[1] ^ k[0], lo1, hi0 ^ c[3] ^ k[1], lo0};
        }
        return c;
    }
};

/// Uniform stream for one (seed, row, stream) triple; successive calls walk the block counter.
class CounterStream
{
public:
    CounterStream(std::uint64_t seed, std::uint64_t row, std::uint32_t stream)
        : key_{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32)},
          row_lo_(static_cast<std::uint32_t>(row)), row_hi_(static_cast<std::uint32_t>(row >> 32)), stream_(stream)
    {
    }

    /// Uniform on the open interval (0, 1) with 53 random bits.
    double uniform()
    {
        if (used_ == 2) {
            const auto out = Philox4x32::block({row_lo_, row_hi_, block_++, stream_}, key_);
            buf_[0] = (std::uint64_t{out[0]} << 32) | out[1];
            buf_[1] = (std::uint64_t{out[2]} << 32) | out[3];
            used_ = 0;
        }
        return (static_cast<double>(buf_[used_++] >> 11) + 0.5) * 0x1.0p-53;
    }

private:
    Philox4x32::Key key_;
    std::uint32_t row_lo_, row_hi_, stream_;
    std::uint32_t block_ = 0;
    std::array<std::uint64_t, 2> buf_{};
    int used_ = 2;
};

} // namespace orlicz
