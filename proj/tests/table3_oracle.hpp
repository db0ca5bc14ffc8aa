// Copyright 2026 The Cyclebell Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef CYCLEBELL_TABLE3_ORACLE_HPP
#define CYCLEBELL_TABLE3_ORACLE_HPP

#include <array>
#include <string_view>
#include <utility>

namespace cyclebell::testing {

/// All 63 nontrivial C6 stabilizers: input bitstring -> signed Pauli string.
/// Frozen reference values; grouping into the 37 reference measurement
/// settings lives in data/c6_stabilizer_reference.csv.
inline constexpr std::array<std::pair<std::string_view, std::string_view>, 63> kC6Stabilizers{{
    {"000001", "+ZIIIZX"}, {"001000", "+IZXZII"}, {"001001", "+ZZXZZX"},
    {"000010", "+IIIZXZ"}, {"010000", "+ZXZIII"}, {"010010", "+ZXZZXZ"},
    {"000011", "+ZIIZYY"}, {"010011", "+IXZZYY"},
    {"000100", "+IIZXZI"}, {"100000", "+XZIIIZ"}, {"100100", "+XZZXZZ"},
    {"000101", "+ZIZXIX"}, {"010001", "+IXZIZX"}, {"010100", "+ZXIXZI"},
    {"000110", "+IIZYYZ"}, {"100110", "+XZZYYI"},
    {"000111", "-ZIZYXY"}, {"010111", "-IXIYXY"},
    {"001010", "+IZXIXZ"}, {"100010", "+XZIZXI"}, {"101000", "+XIXZIZ"},
    {"001011", "+ZZXIYY"},
    {"001100", "+IZYYZI"}, {"101100", "+XIYYZZ"},
    {"001101", "+ZZYYIX"},
    {"001110", "-IZYXYZ"}, {"101110", "-XIYXYI"},
    {"001111", "+ZZYXXY"},
    {"010101", "+IXIXIX"}, {"111110", "-YXXXYI"},
    {"010110", "+ZXIYYZ"},
    {"011000", "+ZYYZII"}, {"011010", "+ZYYIXZ"},
    {"011001", "+IYYZZX"},
    {"011011", "+IYYIYY"}, {"101101", "+YIYYIY"}, {"110110", "+YYIYYI"},
    {"011100", "-ZYXYZI"}, {"011101", "-IYXYIX"},
    {"011110", "+ZYXXYZ"},
    {"011111", "-IYXXXY"},
    {"100001", "+YZIIZY"}, {"101001", "+YIXZZY"},
    {"100011", "-YZIZYX"}, {"101011", "-YIXIYX"},
    {"100101", "+YZZXIY"},
    {"100111", "+YZZYXX"},
    {"101010", "+XIXIXI"}, {"111101", "-XXXYIY"},
    {"101111", "-YIYXXX"},
    {"110000", "+YYZIIZ"}, {"110100", "+YYIXZZ"},
    {"110001", "-XYZIZY"}, {"110101", "-XYIXIY"},
    {"110010", "+YYZZXI"},
    {"110011", "+XYZZYX"},
    {"110111", "-XYIYXX"},
    {"111000", "-YXYZIZ"}, {"111010", "-YXYIXI"},
    {"111001", "+XXYZZY"},
    {"111011", "-XXYIYX"},
    {"111100", "+YXXYZZ"},
    {"111111", "+XXXXXX"},
}};

}  // namespace cyclebell::testing

#endif
