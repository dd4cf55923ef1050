#!/usr/bin/env python3
"""Writes fixtures/paper: a small dataset holding the rows shown for the
reference queries plus the parent and junction rows they need."""

import csv
import sys
from pathlib import Path

OUT = Path(sys.argv[1]) if len(sys.argv) > 1 else Path(__file__).resolve().parent.parent / "fixtures" / "paper"

# (Show_id, name, release year, writer, genre)
shows = []
critics = []  # (Show_id, IMDB, Rotten Tomatoes)
series = []  # (Show_id, Production_id, Duration, Seasons, Episodes)
pg = []  # (Show_id, U, U/A, A)
directors = []

productions = [
    (1, "Forward Media"),
    (2, "Orion Pictures"),
    (3, "Warped Films"),
    (4, "Columbia Pictures Corporation"),
    (5, "ABC Motion Pictures"),
    (6, "Half Moon Entertainment"),
    (7, "Brightlight Studios"),
]

# Short series; ids ascend in the published result order.
short_series = [
    (11, "Three Men of the City", 1),
    (12, "The Georgian House", 2),
    (13, "Secret Army", 3),
    (14, "How the West Was Won", 4),
    (15, "Katitzi", 5),
    (16, "Kingswood Country", 6),
    (17, "A Man Called Sloane", 3),
]
for sid, name, prod in short_series:
    shows.append((sid, name, 1970 + sid, "Jean Holloway", "Drama"))
    series.append((sid, prod, 45, 1, 5))
    critics.append((sid, "10" if sid == 17 else "7.5", "6.1"))

# Near misses for the season/episode filter.
for sid, name, prod, seasons, episodes in [
    (18, "The Long Harbour", 7, 2, 5),
    (19, "Quiet Acres", 1, 1, 6),
    (42, "Northern Lights", 2, 3, 12),
]:
    shows.append((sid, name, 1990, "Jean Holloway", "Drama"))
    series.append((sid, prod, 30, seasons, episodes))
    critics.append((sid, "8", "7"))

top_rated = [
    "Make Room for Granddaddy",
    "Dinah's Place",
    "From a Bird's Eye View",
    "The Starlost",
    "Amy Prentiss",
    "My Son Reuben",
    "Adams of Eagle Lake",
    "Eigener Herd ist Goldes wert",
    "Kate McShane",
    "Three for the Road",
    "Star Maidens",
    "The Betty White Show",
    "The Marilyn McCoo and Billy Davis, Jr. Show",
    "Hedebornna",
    "Send in the Girls",
    "The Lazarus Syndrome",
]
for i, name in enumerate(top_rated):
    sid = 20 + i
    shows.append((sid, name, 1970 + i, "Fred Freiberger", "Comedy"))
    critics.append((sid, "10", "8.4"))
shows.append((36, "Sapphire & Steel", 1979, "P.J. Hammond", "Mystery"))
critics.append((36, "10.0", "9"))
# Ratings close to 10 that must not match.
shows.append((37, "The Paper Chase", 1978, "Fred Freiberger", "Drama"))
critics.append((37, "9.9", "9.9"))
shows.append((38, "Lou Grant", 1977, "Fred Freiberger", "Drama"))
critics.append((38, "9.95", "10"))

shows.append((40, "For the Love of Ada", 1974, "S.S. Wilson", "Comedy"))
shows.append((41, "The Associates", 1988, "S.S. Wilson", "Comedy"))
shows.append((43, "Tremors Abroad", 1996, "S.S. Wilson and Brent Maddock", "Horror"))
critics.append((40, "8.2", "7.9"))
critics.append((41, "6.8", "7.1"))

# Adventure shows for the actor query, ids ascending in published order.
adventure = [
    (50, "Toma", "Manya Starr", 1985, "Henry Mancini"),
    (51, "Harry 0", "Larry Cohen", 1979, "Steve Guttenberg"),
    (52, "Partridge Family 2200 AD", "Joe Eszterhas", 2015, "Noah Hathaway"),
    (53, "The Sweeney", "Joe Camp", 2021, "Lance Henriksen"),
    (54, "The Lost Islands", "Stewart Raffill", 1980, "Diane Keaton"),
    (55, "We'll Get By", "David Saperstein", 1985, "Heather Langenkamp"),
    (56, "Eight Is Enough", "David Webb Peoples", 2000, "Kelly McGillis"),
    (57, "En by i provinser", "Stuart Gordon", 2001, "Kelly McGillis"),
    (58, "Grange Hill", "Terry Rossio", 1979, "Colm Meaney"),
]
ages = {
    "Henry Mancini": 15,
    "Steve Guttenberg": 14,
    "Noah Hathaway": 38,
    "Lance Henriksen": 21,
    "Diane Keaton": 40,
    "Heather Langenkamp": 17,
    "Kelly McGillis": 28,
    "Colm Meaney": 17,
}
for sid, name, writer, year, _ in adventure:
    shows.append((sid, name, year, writer, "Adventure"))
    pg.append((sid, 0, 1, 0))
    directors.append((sid, "Director of " + name))
# Adventure shows that fail one condition each: rated A, no director, older cast.
shows.append((59, "Salvage 1", 1979, "Mike Lloyd Ross", "Adventure"))
pg.append((59, 0, 0, 1))
directors.append((59, "Harve Bennett"))
shows.append((60, "Wildside", 1985, "Tony Kayden", "Adventure"))
pg.append((60, 0, 1, 0))
shows.append((61, "The Quest", 1976, "Tracy Keenan Wynn", "Adventure"))
pg.append((61, 0, 1, 0))
directors.append((61, "Lee H. Katzin"))
for sid in (11, 12, 20, 21, 40, 41):
    pg.append((sid, 1, 0, 0))

actors = []
actor_ids = {}
nationalities = ["India", "USA", "UK", "Russia", "France", "Spain"]
for i, name in enumerate(ages):
    actor_ids[name] = i + 1
    actors.append((i + 1, name, "Male", ages[name], nationalities[i % len(nationalities)]))
actors += [
    (9, "Ben Murphy", "Male", 41, "USA"),
    (10, "Sharon Gless", "Female", 33, "USA"),
    (11, "Vera Miles", "Female", 29, "Canada"),
    (12, "Tom Baker", "Male", 36, "UK"),
]
cast = [(actor_ids[actor], sid) for sid, _, _, _, actor in adventure]
cast += [(9, 61), (10, 61), (11, 59), (1, 59), (12, 60), (12, 36), (10, 17)]

platform_names = [
    "Eros Now",
    "TVF Play",
    "ALT Balaji",
    "Sony LIV",
    "Netflix",
    "Amazon Prime Video",
    "Hungama Play",
    "Disney + Hotstar",
    "Voot",
    "Jio Cinema",
    "Ullu App",
    "Mx player",
]
platforms = [(i + 1, n) for i, n in enumerate(platform_names)]
stats = []
stat_shows = [20, 40, 50, 11]
for pid, _ in platforms:
    for k, sid in enumerate(stat_shows[: 2 + pid % 3]):
        stats.append((pid, sid, 1000 + 37 * pid + 211 * k))

subscriptions = [(1, 20, 1), (5, 20, 0), (5, 40, 1), (6, 50, 1)]
resolution = [(5, 20, "4K", 1), (5, 40, "HD", 0)]
platform_show = [(pid, sid) for pid, sid, _ in subscriptions]
availability = [(pid, sid, 1) for pid, sid, _ in subscriptions]

shows.sort()
show_ids = {s[0] for s in shows}
assert len(shows) <= 50 and len(show_ids) == len(shows)

tables = {
    "Collections_of_shows": (["Show_id", "Release year", "Writer", "Genre"], [(s[0], s[2], s[3], s[4]) for s in shows]),
    "Show_id-name": (["Show_id", "Show Name"], [(s[0], s[1]) for s in shows]),
    "Actors": (["Actor_id", "Actor name", "Gender", "Age", "Nationality"], actors),
    "Productions": (["Production_id", "Production_Name"], productions),
    "Platforms": (["Platform_id", "Platform name"], platforms),
    "Actor_id-Show_id": (["Actor_id", "Show_id"], cast),
    "Production_id-Show_id": (["Production_id", "Show_id"], [(p, s) for s, p, _, _, _ in series]),
    "Critics_Rating": (["Show_id", "IMDB rating", "Rotten Tomatoes"], critics),
    "PG_Rating": (["Show_id", "U", "U/A", "A"], sorted(pg)),
    "Platform_id-Show_id": (["Platform_id", "Show_id"], platform_show),
    "Subscriptions": (["Platform_id", "Show_id", "required(y/n)"], subscriptions),
    "Availability": (["Platform_id", "Show_id", "Availability"], availability),
    "Resolution": (["Platform_id", "Show_id", "Resolution", "Required"], resolution),
    "TV_series": (["Show_id", "Production_id", "Duration", "Seasons", "Episodes"], series),
    "Director": (["Show_id", "Director"], sorted(directors)),
    "Statistics": (["Platform_id", "Show_id", "views/mo"], stats),
    "Actor_nomination": (["Actor_id", "Actor Oscar nominated(y/n)"], [(5, 1), (12, 0)]),
    "Related_shows": (["Show_id", "Related_Show_id"], [(40, 41), (41, 40), (50, 61)]),
}

for name, (_, rows) in tables.items():
    assert len(rows) <= 50, name

OUT.mkdir(parents=True, exist_ok=True)
for old in OUT.glob("*.csv"):
    old.unlink()
with open(OUT / "manifest.txt", "w", newline="") as manifest:
    for name, (header, rows) in tables.items():
        manifest.write(name + "\n")
        file = OUT / (name.replace("/", "_").replace(" ", "_") + ".csv")
        with open(file, "w", newline="") as f:
            w = csv.writer(f, lineterminator="\n")
            w.writerow(header)
            w.writerows(rows)
