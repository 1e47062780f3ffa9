class Repo {
    void load() {
        scan();
    }

    void parse() {
    }
}
