class Repo {
    Order current;
}
