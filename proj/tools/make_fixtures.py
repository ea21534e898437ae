#
# Copyright 2026 The Groundwork Authors
#
# Licensed under the Apache License, Version 2.0 (the "License");
# you may not use this file except in compliance with the License.
# You may obtain a copy of the License at
#
#     http://www.apache.org/licenses/LICENSE-2.0
#
# Unless required by applicable law or agreed to in writing, software
# distributed under the License is distributed on an "AS IS" BASIS,
# WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
# See the License for the specific language governing permissions and
# limitations under the License.
#

"""Writes the bundled offline fixture set used by the mock provider.

All documents are synthetic: hosts are example domains and every figure is
made up for testing. Run from the repository root:

    python3 tools/make_fixtures.py fixtures/tiktok
"""

import argparse
import hashlib
import json
import pathlib

QUERY = (
    "Evaluate the potential consequences of TikTok bans on investment risks and "
    "analyze how companies can strategically navigate these challenges. Consider how "
    "varying degrees of restrictions might impact business operations and explore "
    "adaptive measures to mitigate associated risks."
)


def item(item_id, goal, priority, criteria, inclusions, exclusions=(), depends_on=()):
    return {
        "id": item_id,
        "goal": goal,
        "inclusions": list(inclusions),
        "exclusions": list(exclusions),
        "acceptance_criteria": list(criteria),
        "priority": priority,
        "depends_on": list(depends_on),
        "status": "draft",
        "bound_nodes": [],
    }


ITEMS = [
    (item("economic",
          "Economic and Financial Impact of a ban on valuations, advertising spend and the creator economy",
          1, ["Quantified estimate of revenue or valuation exposure"],
          ["Advertiser spend", "Creator income", "Platform valuation"],
          ["Consumer app store pricing"]),
     ["tiktok ban economic financial impact"]),
    (item("strategy",
          "Strategic and Operational Adaptation by companies that depend on the platform",
          2, ["Named diversification measures with reported adoption rates"],
          ["Channel diversification", "Contingency planning", "Budget reallocation"],
          depends_on=["economic"]),
     ["tiktok ban strategic operational adaptation"]),
    (item("legal",
          "Legal, Political, and Regulatory Risk created by restrictions and forced divestiture",
          3, ["Timeline of regulatory actions and court dates"],
          ["Legislation", "Court challenges", "Divestiture compliance"]),
     ["tiktok ban legal political regulatory risk"]),
    (item("market",
          "Market and Competitive Dynamics among rival short video platforms",
          4, ["Share of displaced advertising captured by rivals, in percent"],
          ["Competitor positioning", "Advertising share shifts"]),
     ["tiktok ban market competitive dynamics",
      "short video rivals advertising share"]),
    (item("social",
          "Social and Cultural Impact on users, creators and digital communities",
          5, ["Reported number of migrating users"],
          ["User migration", "Creator livelihoods", "Music discovery"]),
     ["tiktok ban social cultural impact",
      "creator community migration survey"]),
    (item("technical",
          "Technical and Data Implications of enforcement, data separation and algorithm transfer",
          6, ["Documented risks of data transfer and enforcement gaps"],
          ["Enforcement mechanisms", "Data separation", "Algorithm transferability"]),
     ["tiktok ban technical data implications",
      "tiktok data separation project",
      "recommendation algorithm transfer feasibility",
      "app store removal enforcement vpn"]),
]


def doc(url, title, body, published, status="ok"):
    return {"url": url, "title": title, "body": body, "published": published, "status": status}


SEARCH = {
    "tiktok ban economic financial impact": [
        doc("https://markets.example.com/briefs/ad-spend-exposure",
            "Advertiser exposure to a ban",
            "<p>A synthetic advertiser panel puts 14.5 billion dollars of annual "
            "advertising spend at risk from a ban. The economic and financial impact "
            "falls first on valuations, advertising spend and the creator economy.</p>",
            "2025-03-10"),
        doc("https://research.example.edu/creator-economy/income",
            "Creator economy income at risk",
            "Synthetic survey data suggest 62 percent of full-time creators earn most of "
            "their income on the platform. The economic and financial impact of a ban on "
            "the creator economy would reach valuations and advertising spend as well.",
            "2025-01-22"),
        doc("https://valuation.example.net/notes/bytedance",
            "Valuation discount under ban threat",
            "Analysts in this synthetic note apply a 20 percent valuation discount while a "
            "ban is pending. The economic and financial impact on valuations, advertising "
            "spend and the creator economy depends on whether the ban takes effect.",
            "2024-11-05"),
        doc("https://markets.example.com/briefs/ad-spend-exposure?utm_source=feed&utm_medium=rss",
            "Advertiser exposure to a ban",
            "<p>A synthetic advertiser panel puts 14.5 billion dollars of annual "
            "advertising spend at risk from a ban. The economic and financial impact "
            "falls first on valuations, advertising spend and the creator economy.</p>",
            "2025-03-10"),
    ],
    "tiktok ban strategic operational adaptation": [
        doc("https://strategy.example.org/playbooks/diversification",
            "Diversification playbooks",
            "In a synthetic poll 71 percent of consumer brands reported a channel "
            "diversification plan. Strategic and operational adaptation by companies that "
            "depend on the platform centres on contingency budgets and alternative channels.",
            "2025-02-14"),
        doc("https://ops.example.com/insights/contingency",
            "Contingency planning for restrictions",
            "A synthetic benchmark found 45 percent of retailers had tested moving creative "
            "production to other apps. Strategic and operational adaptation by companies "
            "that depend on the platform is cheaper when planned before restrictions bite.",
            "2024-12-01"),
    ],
    "tiktok ban legal political regulatory risk": [
        doc("https://www.example.gov/legislation/foreign-adversary-apps",
            "Foreign adversary controlled applications act summary",
            "The synthetic act summary sets a 270 day window for divestiture before a "
            "distribution ban applies. Legal, political, and regulatory risk created by "
            "restrictions and forced divestiture shapes every investment decision.",
            "2024-04-24"),
        doc("https://law.example.org/analysis/first-amendment",
            "Court challenges to the ban",
            "Two synthetic appellate rulings in 2024 upheld the restriction on national "
            "security grounds. Legal, political, and regulatory risk created by restrictions "
            "and forced divestiture remains high while challenges continue.",
            "2024-12-06"),
        doc("https://law.example.org/analysis/blank", "Placeholder page", "   ", "2024-12-07"),
    ],
    "tiktok ban market competitive dynamics": [
        doc("https://adtech.example.com/reports/rival-share",
            "Rival platforms court displaced advertisers",
            "Synthetic forecasts give rival short video platforms 58 percent of displaced "
            "advertising. Market and competitive dynamics among rival short video platforms "
            "favour incumbents with existing ad stacks.",
            "2025-04-02"),
    ],
    "short video rivals advertising share": [
        doc("https://adtech.example.com/reports/smaller-platforms",
            "Room for smaller platforms",
            "Smaller apps capture 12 percent of displaced spend in this synthetic model. "
            "Market and competitive dynamics among rival short video platforms leave some "
            "room for challengers.",
            "2025-05-19"),
    ],
    "tiktok ban social cultural impact": [
        doc("https://culture.example.edu/studies/migration",
            "Where users go after a ban",
            "A synthetic panel of 3000 users expects 40 percent to move to rival apps within "
            "a month. Social and cultural impact on users, creators and digital communities "
            "includes lost music discovery and niche groups.",
            "2025-01-30"),
    ],
    "creator community migration survey": [
        doc("https://culture.example.edu/studies/creators",
            "Creator community migration survey",
            "Synthetic interviews with 250 creators found most would rebuild audiences "
            "elsewhere. Social and cultural impact on users, creators and digital "
            "communities is uneven across niches.",
            "2025-06-11"),
    ],
    "tiktok ban technical data implications": [
        doc("https://tech.example.net/missing", "", "", None, status="404"),
    ],
    "tiktok data separation project": [],
    "recommendation algorithm transfer feasibility": [
        doc("https://tech.example.net/papers/algorithm-transfer",
            "Can the recommendation algorithm be transferred",
            "The synthetic study estimates 18 months to rebuild the recommendation system "
            "without source access. Technical and data implications of enforcement, data "
            "separation and algorithm transfer include degraded relevance.",
            "2025-02-03"),
    ],
    "app store removal enforcement vpn": [
        doc("https://tech.example.net/papers/enforcement",
            "Enforcement through app store removal",
            "In a synthetic test 30 percent of users kept access through a VPN after store "
            "removal. Technical and data implications of enforcement, data separation and "
            "algorithm transfer limit how complete a ban can be.",
            "2025-03-28"),
    ],
}


def short_hash(text, length=12):
    return hashlib.sha256(text.encode("utf-8")).hexdigest()[:length]


def write_json(path, value):
    path.parent.mkdir(parents=True, exist_ok=True)
    path.write_text(json.dumps(value, indent=2, ensure_ascii=False) + "\n", encoding="utf-8")


def main(out_dir):
    root = pathlib.Path(out_dir)
    items = []
    for it, queries in ITEMS:
        entry = dict(it)
        entry["queries"] = queries
        items.append(entry)
    checklist_file = "checklist/" + short_hash(QUERY) + ".json"
    write_json(root / checklist_file, {"query": QUERY, "items": items})

    search = []
    for query in sorted(SEARCH):
        file = "search/" + short_hash(query) + ".json"
        write_json(root / file, {"query": query, "results": SEARCH[query]})
        search.append({"query": query, "file": file})

    write_json(root / "manifest.json", {
        "schema": "fixtures/1",
        "license": "Apache-2.0",
        "checklists": [{"query": QUERY, "file": checklist_file}],
        "search": search,
        "llm": [],
    })
    write_json(root / "config.json", {
        "query": QUERY,
        "mock": True,
        "fixtures_dir": ".",
        "critic_mode": "llm",
        "max_steps": 20,
        "min_evidence_per_leaf": 2,
    })


if __name__ == "__main__":
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument("out", nargs="?", default="fixtures/tiktok",
                        help="output directory (default: fixtures/tiktok)")
    main(parser.parse_args().out)
