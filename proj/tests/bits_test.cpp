// Copyright 2026 The romlab Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include <gtest/gtest.h>

#include <random>

#include "romlab/bits.hpp"
#include "romlab/coding.hpp"
#include "romlab/error.hpp"
#include "romlab/length.hpp"

namespace romlab {
namespace {

TEST(Bits, FromBytesKeepsEveryBit) {
  const Bits b = Bits::from_bytes(Bytes{0xA5, 0x0F});
  EXPECT_EQ(b.size(), 16u);
  EXPECT_TRUE(b.bit(0));
  EXPECT_FALSE(b.bit(1));
  EXPECT_TRUE(b.bit(15));
  EXPECT_EQ(b.hex(), "a50f");
}

TEST(Bits, ResizeTruncatesAndPadsOnTheRight) {
  const Bits b = Bits::from_bytes(Bytes{0xFF, 0xFF});
  const Bits t = b.resized(5);
  EXPECT_EQ(t.size(), 5u);
  EXPECT_EQ(t.bytes(), Bytes{0xF8});
  const Bits p = t.resized(12);
  EXPECT_EQ(p.bytes(), (Bytes{0xF8, 0x00}));
  EXPECT_EQ(p.resized(5), t);
}

TEST(Bits, TrailingBitsStayZeroSoEqualityIsBitwise) {
  Bits a(Bytes{0xFF}, 3);
  Bits b(Bytes{0xE0}, 3);
  EXPECT_EQ(a, b);
  a.flip(2);
  EXPECT_NE(a, b);
  a.set_bit(2, true);
  EXPECT_EQ(a, b);
}

TEST(Bits, AppendAcrossByteBoundaries) {
  Bits a(Bytes{0xA0}, 3);  // 101
  a.append(Bits(Bytes{0xC0}, 2));  // 11
  a.append(Bits::from_bytes(Bytes{0x01}));
  EXPECT_EQ(a.size(), 13u);
  // 101 11 00000001 -> 1011 1000 0000 1xxx
  EXPECT_EQ(a.bytes(), (Bytes{0xB8, 0x08}));
}

TEST(Bits, OutOfRangeBitThrows) {
  const Bits b = Bits::zeros(4);
  EXPECT_THROW((void)b.bit(4), Error);
}

TEST(Hex, RoundTripAndRejectsGarbage) {
  const Bytes raw{0x00, 0x7f, 0x80, 0xff};
  EXPECT_EQ(to_hex(raw), "007f80ff");
  EXPECT_EQ(from_hex("007F80ff"), raw);
  EXPECT_THROW(from_hex("abc"), Error);
  EXPECT_THROW(from_hex("zz"), Error);
}

TEST(Varint, KnownEncodings) {
  Bytes out;
  put_varint(out, 0);
  EXPECT_EQ(out, Bytes{0x00});
  out.clear();
  put_varint(out, 127);
  EXPECT_EQ(out, Bytes{0x7f});
  out.clear();
  put_varint(out, 128);
  EXPECT_EQ(out, (Bytes{0x80, 0x01}));
  out.clear();
  put_varint(out, 300);
  EXPECT_EQ(out, (Bytes{0xAC, 0x02}));
}

TEST(Varint, RoundTripOnRandomValues) {
  std::mt19937_64 rng(11);
  for (int i = 0; i < 2000; ++i) {
    const std::uint64_t v = rng() >> (rng() % 64);
    Bytes out;
    put_varint(out, v);
    auto got = get_varint(out);
    ASSERT_TRUE(got);
    EXPECT_EQ(got->first, v);
    EXPECT_EQ(got->second, out.size());
  }
}

TEST(Varint, TruncatedAndOverlongAreRejected) {
  EXPECT_FALSE(get_varint(Bytes{0x80}));
  EXPECT_FALSE(get_varint(Bytes{}));
  EXPECT_FALSE(get_varint(Bytes(11, 0x80)));
}

TEST(Reader, ThrowsMalformedPastTheEnd) {
  const Bytes in{0x00, 0x01, 0x02};
  Reader r(in);
  EXPECT_EQ(r.u16(), 1u);
  EXPECT_EQ(r.remaining(), 1u);
  try {
    (void)r.u32();
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kMalformed);
  }
}

TEST(Integers, BigEndianLayout) {
  Bytes out;
  put_u16(out, 0x0102);
  put_u32(out, 0x03040506);
  put_u64(out, 0x0708090a0b0c0d0eULL);
  EXPECT_EQ(to_hex(out), "0102030405060708090a0b0c0d0e");
  EXPECT_EQ(load_u32(out.data() + 2), 0x03040506u);
  EXPECT_EQ(load_u64(out.data() + 6), 0x0708090a0b0c0d0eULL);
}

TEST(DeriveSeed, DeterministicAndStreamSeparated) {
  EXPECT_EQ(derive_seed(7, 1, 3), derive_seed(7, 1, 3));
  EXPECT_NE(derive_seed(7, 1, 3), derive_seed(7, 2, 3));
  EXPECT_NE(derive_seed(7, 1, 3), derive_seed(7, 1, 4));
  EXPECT_NE(derive_seed(7, 1, 3), derive_seed(8, 1, 3));
}

TEST(Length, IdentityAffineConstant) {
  EXPECT_EQ(LengthFunction::identity()(32), 32u);
  EXPECT_EQ(LengthFunction::affine(1, 2, 0)(32), 16u);
  EXPECT_EQ(LengthFunction::affine(1, 1, -8)(32), 24u);
  EXPECT_EQ(LengthFunction::constant(4)(1000), 4u);
  EXPECT_FALSE(LengthFunction::affine(1, 1, -8).try_eval(4));
  EXPECT_THROW(LengthFunction::affine(1, 1, -8)(4), Error);
}

TEST(Length, TableAndScaled) {
  const LengthFunction t = LengthFunction::table({{8, 3}, {16, 4}});
  EXPECT_EQ(t(16), 4u);
  EXPECT_FALSE(t.try_eval(24));
  const LengthFunction s = LengthFunction::scaled(LengthFunction::affine(1, 2, 0), 3);
  EXPECT_EQ(s(48), 24u);
  EXPECT_FALSE(s.try_eval(50));
}

TEST(Length, PolynomialCapIsEnforced) {
  EXPECT_THROW(LengthFunction::affine(65, 1, 0), Error);
  EXPECT_THROW(LengthFunction::affine(1, 0, 0), Error);
  EXPECT_THROW(LengthFunction::table({{2, polynomial_cap(2) + 1}}), Error);
}

TEST(Length, Describe) {
  EXPECT_EQ(LengthFunction::identity().describe(), "k");
  EXPECT_EQ(LengthFunction::affine(1, 2, 0).describe(), "k/2");
  EXPECT_EQ(LengthFunction::affine(1, 1, -8).describe(), "k-8");
  EXPECT_EQ(LengthFunction::constant(4).describe(), "4");
}

}  // namespace
}  // namespace romlab
