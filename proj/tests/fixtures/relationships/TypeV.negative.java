class Repo {
    Invoice current;
}
