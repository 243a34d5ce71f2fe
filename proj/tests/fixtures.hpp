#pragma once

// Shared plane/space group definitions used across the test suite.

#include <string>

#include "whcryst/cryst_group.hpp"

namespace fixtures {

inline whcryst::CrystGroup from_json(const std::string& text) {
    return whcryst::parse_group(text);
}

inline std::string p1_json() {
    return R"({"name":"p1","dim":2,
      "gram":[[1,0],[0,1]],
      "generators":[]})";
}

inline std::string p2_json() {
    return R"({"name":"p2","dim":2,
      "gram":[[1,0],[0,1]],
      "generators":[{"linear":[[-1,0],[0,-1]],"translation":["0","0"]}]})";
}

inline std::string pg_json() {
    return R"({"name":"pg","dim":2,
      "gram":[[1,0],[0,1]],
      "generators":[{"linear":[[1,0],[0,-1]],"translation":["1/2","0"]}]})";
}

inline std::string pmm_json() {
    return R"({"name":"Pmm","dim":2,
      "gram":[[1,0],[0,1]],
      "generators":[
        {"linear":[[-1,0],[0,1]],"translation":["0","0"]},
        {"linear":[[1,0],[0,-1]],"translation":["0","0"]}]})";
}

inline std::string p4_json() {
    return R"({"name":"p4","dim":2,
      "gram":[[1,0],[0,1]],
      "generators":[{"linear":[[0,-1],[1,0]],"translation":["0","0"]}]})";
}

inline std::string p6_json() {
    return R"({"name":"p6","dim":2,
      "gram":[["1","-1/2"],["-1/2","1"]],
      "generators":[{"linear":[[1,-1],[1,0]],"translation":["0","0"]}]})";
}

inline std::string p6mm_json() {
    return R"({"name":"p6mm","dim":2,
      "gram":[["1","-1/2"],["-1/2","1"]],
      "generators":[
        {"linear":[[1,-1],[1,0]],"translation":["0","0"]},
        {"linear":[[0,1],[1,0]],"translation":["0","0"]}]})";
}

inline std::string P1_json() {
    return R"({"name":"P1","dim":3,
      "gram":[[1,0,0],[0,1,0],[0,0,1]],
      "generators":[]})";
}

inline std::string Pmmm_json() {
    return R"({"name":"Pmmm","dim":3,
      "gram":[[1,0,0],[0,1,0],[0,0,1]],
      "generators":[
        {"linear":[[-1,0,0],[0,1,0],[0,0,1]],"translation":["0","0","0"]},
        {"linear":[[1,0,0],[0,-1,0],[0,0,1]],"translation":["0","0","0"]},
        {"linear":[[1,0,0],[0,1,0],[0,0,-1]],"translation":["0","0","0"]}]})";
}

inline std::string P42_json() {
    return R"({"name":"P42","dim":3,
      "gram":[[1,0,0],[0,1,0],[0,0,1]],
      "generators":[
        {"linear":[[0,-1,0],[1,0,0],[0,0,1]],"translation":["0","0","1/2"]}]})";
}

inline std::string P3c_json() {
    return R"({"name":"P3c","dim":3,
      "gram":[["1","-1/2","0"],["-1/2","1","0"],["0","0","1"]],
      "generators":[
        {"linear":[[0,-1,0],[1,-1,0],[0,0,1]],"translation":["0","0","0"]},
        {"linear":[[0,1,0],[1,0,0],[0,0,1]],"translation":["0","0","1/2"]}]})";
}

inline std::string PmmxZ_json() {
    return R"({"name":"PmmxZ","dim":3,
      "gram":[[1,0,0],[0,1,0],[0,0,1]],
      "generators":[
        {"linear":[[-1,0,0],[0,1,0],[0,0,1]],"translation":["0","0","0"]},
        {"linear":[[1,0,0],[0,-1,0],[0,0,1]],"translation":["0","0","0"]}]})";
}

inline std::string P6mm_json() {
    return R"({"name":"P6mm","dim":3,
      "gram":[["1","-1/2","0"],["-1/2","1","0"],["0","0","1"]],
      "generators":[
        {"linear":[[1,-1,0],[1,0,0],[0,0,1]],"translation":["0","0","0"]},
        {"linear":[[0,1,0],[1,0,0],[0,0,1]],"translation":["0","0","0"]}]})";
}

} // namespace fixtures
