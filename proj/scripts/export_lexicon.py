#!/usr/bin/env python3
"""Export the hashtag segmentation lexicon from the wordfreq package.

Writes `word<TAB>count` rows where count is the word's frequency per
billion tokens, restricted to the top-N lowercase ASCII alphabetic words.
"""
import argparse

from importlib.metadata import version

import wordfreq


def main():
    parser = argparse.ArgumentParser()
    parser.add_argument("--top", type=int, default=50000)
    parser.add_argument("--out", required=True)
    args = parser.parse_args()

    rows = []
    for word in wordfreq.top_n_list("en", args.top, wordlist="large"):
        if not (word.isascii() and word.isalpha()):
            continue
        count = round(wordfreq.word_frequency(word, "en", wordlist="large") * 1e9)
        if count > 0:
            rows.append((word, count))

    with open(args.out, "w", encoding="utf-8") as f:
        f.write(f"# source: wordfreq {version('wordfreq')} (en, large), top {args.top}, "
                "counts per 1e9 tokens\n")
        for word, count in rows:
            f.write(f"{word}\t{count}\n")


if __name__ == "__main__":
    main()
